#ifndef LINSTATS_ENSEMBLES_HPP
#define LINSTATS_ENSEMBLES_HPP

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "linstats/operators.hpp"
#include "linstats/orthopoly.hpp"
#include "linstats/quadrature.hpp"
#include "linstats/testfunction.hpp"

// Finite-N constructions.  Weight conventions follow the source material
// per ensemble:
//   beta=2,4 Gaussian: w = e^{-x^2};      beta=1 Gaussian: w = e^{-x^2/2}
//   beta=2,4 Laguerre: w = x^alpha e^{-x}; beta=1 Laguerre: w = x^{alpha/2} e^{-x/2}
// The psi bases, M matrices, K^{(2,2)} kernels, and the scalar determinant
// formulas for [G_N^(beta)]^2 are built from the orthopoly systems; the
// determinants are evaluated by Nystrom discretization.

namespace linstats {

enum class Family { Gaussian, Laguerre };

struct EnsembleSpec {
    Family family = Family::Gaussian;
    int beta = 2;
    int N = 1;
    double alpha = 0.0;   // Laguerre only

    void validate() const;
    std::string name() const;   // GOE/GUE/GSE/LOE/LUE/LSE
    double weight(double x) const;

    // Laguerre system parameter: alpha-1 (beta=4), alpha+1 (beta=1), alpha (beta=2)
    double laguerre_parameter() const;
    // highest phi degree entering the kernel (2N for beta=4, N-1 otherwise)
    int top_degree() const { return beta == 4 ? 2 * N : N - 1; }

    ScalingRule scaling() const;
};

// psi_j and derivatives/eps-transforms, j = 0..count-1 (2N for beta=4,
// N for beta=1), delegating to the closed orthopoly forms.
struct PsiBasis {
    int count = 0;
    std::function<double(int, double)> psi;
    std::function<double(int, double)> psi_deriv;
    std::function<double(int, double)> eps_psi;   // beta = 1 only
};
PsiBasis build_psi(const EnsembleSpec& spec);

// M^{(4)}_{jk} = int (psi_j psi_k' - psi_j' psi_k) dx  (2N x 2N)
// M^{(1)}_{jk} = int psi_j eps psi_k dx                (N x N)
// computed from the defining integrals by quadrature.
Eigen::MatrixXd build_M(const EnsembleSpec& spec);

// K_N^{(2,2)} = s_factor * S_N + coeff * u (x) v
struct K22 {
    KernelClosure S;
    double s_factor = 1.0;
    double coeff = 0.0;
    std::function<double(double)> u, v;

    double operator()(double x, double y) const {
        return s_factor * S(x, y) + coeff * u(x) * v(y);
    }
};
K22 k22_kernel(const EnsembleSpec& spec);

// Christoffel-Darboux closure for S_N (all six ensembles).
KernelClosure cd_kernel(const EnsembleSpec& spec);

// -------------------------------------------------------------- operands

// Everything needed to assemble the Fredholm operand T on a grid; see the
// scalar determinant theorems.  beta=2 keeps only S.
struct DetOperand {
    const QuadratureGrid* grid = nullptr;
    EnsembleSpec spec;
    Eigen::MatrixXd S;        // S_N(x_i, x_j), CD closed form
    Eigen::MatrixXd Seps;     // (S eps)(x_i, x_j) = -sum_j phi_j (x) eps phihat_j
    Eigen::MatrixXd Phi;      // basis phi_j(x_i)            (beta = 1)
    Eigen::MatrixXd PhiHat;   // right-family phihat_j(x_i)  (beta = 1)
    Eigen::VectorXd u, v, ev; // rank-one data: u = eps(top), v = hat(top-1), ev = eps(hat(top-1))
    double c = 0.0;           // rank-one coefficient

    // half-line boundary data (beta = 1 Laguerre): on [0,inf) the scalar
    // reduction uses eps D = I - 1/2 1 (x) delta_0, leaving
    //   [G]^2 = det(I+T) (1 - 1/2 f(0) v0),  (I+T) v = K(1+f) 1,
    // with (K 1) = sum_{even j<N} (int phit_j) phi_j in closed form.
    bool has_boundary = false;
    double u_at0 = 0.0;        // eps phit_N(0) = -1/2 int phit_N
    Eigen::VectorXd K1;        // (K 1)(x_i)
};

DetOperand build_operand(const EnsembleSpec& spec, const QuadratureGrid& grid);

// statistic on the grid: f = e^{-lambda F(rule(x))} - 1 and its exact
// x-derivative (chain rule through the scaling rule)
struct GridStatistic {
    Eigen::VectorXd F, Fp;    // F(rule(x_i)) and d/dx of it
    double F_at0 = 0.0;       // F(rule(0)), needed by the boundary term
};
GridStatistic sample_statistic(const QuadratureGrid& grid, const TestFunction& F,
                               const ScalingRule& rule);

KernelMatrix assemble_T(const DetOperand& op, const Eigen::VectorXd& f,
                        const Eigen::VectorXd& fp);
// lambda- and lambda^2-order operands for f = -lambda F + (lambda^2/2) F^2
std::pair<KernelMatrix, KernelMatrix> assemble_orders(const DetOperand& op,
                                                      const GridStatistic& st);

// ------------------------------------------------------------------ MGFs

// default raw-variable grids (Gaussian: [-R,R], Laguerre: (0,R] graded)
QuadratureGrid default_grid(const EnsembleSpec& spec, int n_nodes = 0);
// grid in the scaled variable u on (0,L] / [-L,L], mapped back to x
QuadratureGrid scaled_grid(const EnsembleSpec& spec, double L, int n_nodes);

// [G_N^(beta)(f_lambda)]^2 via the scalar determinant formula (beta = 1, 4),
// boundary-corrected for the half-line beta=1 case.
double mgf_squared(const EnsembleSpec& spec, const TestFunction& stat,
                   double lambda, const QuadratureGrid& grid,
                   const ScalingRule& rule = {});
double mgf_squared(const EnsembleSpec& spec, const TestFunction& stat,
                   double lambda);

// G_N^{(2)}(f_lambda) = det(I + K_N^{(2)} f)
double mgf_beta2(const EnsembleSpec& spec, const TestFunction& stat,
                 double lambda, const QuadratureGrid& grid,
                 const ScalingRule& rule = {});
double mgf_beta2(const EnsembleSpec& spec, const TestFunction& stat,
                 double lambda);

// G by whichever route the beta requires (sqrt of mgf_squared for 1,4)
double mgf(const EnsembleSpec& spec, const TestFunction& stat, double lambda);

// Brute-force oracle: ratio of N-dimensional quadratures of the defining
// integrals.  Tensor Gauss rules for beta = 2,4; ordered-region nested
// quadrature for beta = 1 (|Delta| has a kink).  N <= 3.
double mgf_direct(const EnsembleSpec& spec, const TestFunction& stat,
                  double lambda, int n_per_dim = 0);

// mean/variance of sum F(rule(x_j)) from the lambda-expansion of
// log det(I+T) (+ the boundary variance shift for the half-line beta=1
// case).  scaled=false uses the raw statistic F(x).
std::pair<double, double> finite_n_cumulants(const EnsembleSpec& spec,
                                             const TestFunction& stat,
                                             bool scaled = true,
                                             int n_nodes = 0);

// ----------------------------------------------------- identity checks

// lhs: 2N x 2N alternating-column determinant det(x_k^j, j x_k^{j-1});
// rhs: prod_{j<k} (x_j - x_k)^4
std::pair<double, double> vandermonde4_det_check(const std::vector<double>& points);

enum class DeBruijnKind { Quaternion, Orthogonal };
// Quaternion: (int det(p_j(x_k), q_j(x_k)) dx)^2 = (N!)^2 det(int (p_j q_k - p_k q_j))
// Orthogonal: (int_{ordered} det(p_j(x_k)) dx)^2 = det(iint sgn(y-x) p_j(x) p_k(y))
std::pair<double, double> debruijn_check(
    DeBruijnKind kind, int N,
    const std::vector<std::function<double(double)>>& p,
    const std::vector<std::function<double(double)>>& q,
    double a, double b, int n_nodes = 200);

} // namespace linstats

#endif
