#ifndef LINSTATS_ORTHOPOLY_HPP
#define LINSTATS_ORTHOPOLY_HPP

#include <Eigen/Dense>
#include <functional>
#include <string>

// Weighted orthonormal function systems and their epsilon-transforms.
//
// Hermite:  phi_j(x) = H_j(x)/c_j e^{-x^2/2},  c_j = pi^{1/4} 2^{j/2} sqrt(j!),
// so int phi_j phi_k dx = delta_jk over R.  The square-root weight is folded
// into the start of the three-term recurrence; raw H_j would overflow near
// j ~ 150.
//
// Laguerre with parameter a > -1:
//   phi_j(x)  = l_j(x) x^{(a+1)/2} e^{-x/2},
//   phit_j(x) = l_j(x) x^{(a-1)/2} e^{-x/2},   int phi_j phit_k dx = delta_jk,
// where l_j = L_j^{(a)}/c_j^{(a)}.  The paper's (alpha-1) system for the LSE
// uses a = alpha-1 (exponents alpha/2, alpha/2-1), the (alpha+1) LOE system
// a = alpha+1 (exponents alpha/2+1, alpha/2).
//
// eps g(x) = 1/2 (int_a^x - int_x^b) g.  eps phi_j obeys the closed
// recurrence obtained from eps D = I applied to the derivative formulas;
// the seeds are erf (Hermite) and a regularized incomplete gamma (Laguerre).

namespace linstats {

class HermiteSystem {
public:
    explicit HermiteSystem(int max_degree);

    int max_degree() const { return max_degree_; }

    double phi(int j, double x) const;
    // phi_j'(x) = sqrt(j/2) phi_{j-1} - sqrt(j/2+1/2) phi_{j+1}
    double phi_deriv(int j, double x) const;
    double eps_phi(int j, double x) const;

    // all degrees 0..max_degree at one point (used by kernel assembly)
    Eigen::VectorXd phi_all(double x) const;
    Eigen::VectorXd eps_phi_all(double x) const;

private:
    void check(int j, int limit) const;
    int max_degree_;
};

class LaguerreSystem {
public:
    LaguerreSystem(double a, int max_degree);

    double parameter() const { return a_; }
    int max_degree() const { return max_degree_; }

    double phi(int j, double x) const;
    double phi_tilde(int j, double x) const;
    // symmetric variant l_j x^{a/2} e^{-x/2} (the beta=2 kernel functions)
    double phi_sym(int j, double x) const;

    // [phi_j]'(x) = 1/2 sqrt((j+1)(j+a+1)) phit_{j+1} - 1/2 sqrt(j(j+a)) phit_{j-1}
    double phi_deriv(int j, double x) const;
    double phi_tilde_deriv(int j, double x) const;   // via phit = phi/x
    double phi_sym_deriv(int j, double x) const;

    double eps_phi_tilde(int j, double x) const;

    // total integral int_0^infty phit_j dx (0 for odd j; closed Gamma ratio
    // for even j -- the paper's normalization facts)
    double tilde_total(int j) const;

    Eigen::VectorXd phi_all(double x) const;
    Eigen::VectorXd phi_tilde_all(double x) const;
    Eigen::VectorXd eps_phi_tilde_all(double x) const;

private:
    void check(int j, int limit) const;
    double a_;
    int max_degree_;
};

// Closed-form kernel with a documented diagonal limit.
struct KernelClosure {
    std::function<double(double, double)> at;
    std::function<double(double)> diag;
    std::string label;

    double operator()(double x, double y) const {
        if (std::abs(x - y) < 1e-7) return diag(0.5 * (x + y));
        return at(x, y);
    }
};

// Hard-edge Bessel kernel, Eq. forms
//   B^{(a)}(x,y) = [J_a(x) y J_a'(y) - J_a(y) x J_a'(x)] / (x^2-y^2) * x
//   B^{(a)}(x,x) = [J_a(x)^2 - J_{a-1}(x) J_{a+1}(x)] / 2 * x
// with J' from the standard identity J_a' = (J_{a-1} - J_{a+1})/2.
// Taken literally: B(x,y) != B(y,x) in general.
double bessel_kernel(double a, double x, double y);

// sine kernel sin(x-y)/(pi (x-y)), diagonal 1/pi
double sine_kernel(double x, double y);

} // namespace linstats

#endif
