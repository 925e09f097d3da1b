#ifndef LINSTATS_OPERATORS_HPP
#define LINSTATS_OPERATORS_HPP

#include <Eigen/Dense>
#include <utility>

#include "linstats/quadrature.hpp"

// Grid-based operator calculus.  A KernelMatrix holds raw kernel values
// K(x_i, x_j) on a shared grid; quadrature weights enter only through the
// operations (Nystrom convention: the operator matrix acting on values is
// K * diag(w), so det(I + K) is det(I + K_ij w_j)).

namespace linstats {

struct GridFunction {
    const QuadratureGrid* grid = nullptr;
    Eigen::VectorXd values;

    GridFunction() = default;
    GridFunction(const QuadratureGrid& g, Eigen::VectorXd v)
        : grid(&g), values(std::move(v)) {}

    template <typename F>
    static GridFunction sample(const QuadratureGrid& g, F&& f) {
        Eigen::VectorXd v(g.size());
        for (int i = 0; i < g.size(); ++i) v[i] = f(g.nodes()[i]);
        return GridFunction(g, std::move(v));
    }
};

struct KernelMatrix {
    const QuadratureGrid* grid = nullptr;
    Eigen::MatrixXd k;

    KernelMatrix() = default;
    KernelMatrix(const QuadratureGrid& g, Eigen::MatrixXd m)
        : grid(&g), k(std::move(m)) {}
    static KernelMatrix zero(const QuadratureGrid& g) {
        return KernelMatrix(g, Eigen::MatrixXd::Zero(g.size(), g.size()));
    }
};

// (eps g)(x) = 1/2 (int_a^x - int_x^b) g, via the grid's panel-spectral
// cumulative integral.
GridFunction apply_eps(const GridFunction& g);

// dg/dx on the grid (per-panel spectral differentiation).
GridFunction apply_deriv(const GridFunction& g);

// raw antisymmetric kernel eps(x_i,x_j) = 1/2 sgn(x_i - x_j); sgn(0) = 0
KernelMatrix eps_kernel(const QuadratureGrid& g);

// (u (x) v)(x,y) = u(x) v(y)
KernelMatrix rank_one(const GridFunction& u, const GridFunction& v);

// operator composition (A B)(x,z) = int A(x,y) B(y,z) dy
KernelMatrix compose(const KernelMatrix& a, const KernelMatrix& b);

// A * diag(f) and diag(f) * A (multiplication operators)
KernelMatrix mult_right(const KernelMatrix& a, const Eigen::VectorXd& f);
KernelMatrix mult_left(const Eigen::VectorXd& f, const KernelMatrix& a);

// apply to a function: (A g)(x_i)
GridFunction apply(const KernelMatrix& a, const GridFunction& g);

double trace_op(const KernelMatrix& a);                       // Tr A
double trace_prod(const KernelMatrix& a, const KernelMatrix& b);  // Tr AB

// det(I + T) by pivoted LU of I + K * diag(w).  Warns (stderr) when the
// value is smaller than 1e-300 in magnitude.
double fredholm_det(const KernelMatrix& t);

// lambda- and lambda^2-coefficients of log det(I + T(lambda)) for
// T(lambda) = lambda T1 + lambda^2 T2 + O(lambda^3):
//   c1 = Tr T1,   c2 = Tr T2 - 1/2 Tr T1^2.
// With [G]^2 = det(I+T) (beta = 1, 4): mean = -c1/2, variance = c2.
// With  G    = det(I+T) (beta = 2):    mean = -c1,   variance = 2 c2.
std::pair<double, double> logdet_coefficients(const KernelMatrix& t1,
                                              const KernelMatrix& t2);

} // namespace linstats

#endif
