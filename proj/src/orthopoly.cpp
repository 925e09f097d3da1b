#include "linstats/orthopoly.hpp"

#include <cmath>
#include <stdexcept>

#include "linstats/specfun.hpp"

namespace linstats {

// ---------------------------------------------------------------- Hermite

HermiteSystem::HermiteSystem(int max_degree) : max_degree_(max_degree) {
    if (max_degree < 0)
        throw std::invalid_argument("HermiteSystem: max_degree >= 0");
}

void HermiteSystem::check(int j, int limit) const {
    if (j < 0 || j > limit)
        throw std::out_of_range("HermiteSystem: degree out of range");
}

Eigen::VectorXd HermiteSystem::phi_all(double x) const {
    Eigen::VectorXd out(max_degree_ + 1);
    double pm = 0.0, p = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    out[0] = p;
    for (int j = 0; j < max_degree_; ++j) {
        const double pn = std::sqrt(2.0 / (j + 1.0)) * x * p -
                          std::sqrt(j / (j + 1.0)) * pm;
        pm = p; p = pn;
        out[j + 1] = p;
    }
    return out;
}

double HermiteSystem::phi(int j, double x) const {
    check(j, max_degree_);
    double pm = 0.0, p = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    for (int k = 0; k < j; ++k) {
        const double pn = std::sqrt(2.0 / (k + 1.0)) * x * p -
                          std::sqrt(k / (k + 1.0)) * pm;
        pm = p; p = pn;
    }
    return p;
}

double HermiteSystem::phi_deriv(int j, double x) const {
    check(j, max_degree_ - 1);
    const double lo = j >= 1 ? phi(j - 1, x) : 0.0;
    return std::sqrt(0.5 * j) * lo - std::sqrt(0.5 * j + 0.5) * phi(j + 1, x);
}

Eigen::VectorXd HermiteSystem::eps_phi_all(double x) const {
    // eps phi_{j+1} = [sqrt(j/2) eps phi_{j-1} - phi_j] / sqrt((j+1)/2),
    // from eps D = I;  eps phi_0 = pi^{-1/4} sqrt(pi/2) erf(x/sqrt 2).
    Eigen::VectorXd ph = phi_all(x);
    Eigen::VectorXd out(max_degree_ + 1);
    out[0] = std::pow(M_PI, -0.25) * std::sqrt(0.5 * M_PI) *
             std::erf(x / std::sqrt(2.0));
    if (max_degree_ >= 1)
        out[1] = -std::sqrt(2.0) * ph[0];
    for (int j = 1; j < max_degree_; ++j)
        out[j + 1] = (std::sqrt(0.5 * j) * out[j - 1] - ph[j]) /
                     std::sqrt(0.5 * (j + 1.0));
    return out;
}

double HermiteSystem::eps_phi(int j, double x) const {
    check(j, max_degree_);
    return eps_phi_all(x)[j];
}

// --------------------------------------------------------------- Laguerre

LaguerreSystem::LaguerreSystem(double a, int max_degree)
    : a_(a), max_degree_(max_degree) {
    if (a <= -1.0)
        throw std::invalid_argument("LaguerreSystem: parameter must be > -1");
    if (max_degree < 0)
        throw std::invalid_argument("LaguerreSystem: max_degree >= 0");
}

void LaguerreSystem::check(int j, int limit) const {
    if (j < 0 || j > limit)
        throw std::out_of_range("LaguerreSystem: degree out of range");
}

Eigen::VectorXd LaguerreSystem::phi_all(double x) const {
    if (x < 0)
        throw std::domain_error("LaguerreSystem: x >= 0 required");
    Eigen::VectorXd out(max_degree_ + 1);
    // start value = x^{(a+1)/2} e^{-x/2} / sqrt(Gamma(a+1))
    double pm = 0.0;
    double p = x == 0.0 ? 0.0
                        : std::exp(0.5 * (a_ + 1.0) * std::log(x) - 0.5 * x -
                                   0.5 * std::lgamma(a_ + 1.0));
    out[0] = p;
    for (int j = 0; j < max_degree_; ++j) {
        const double pn = ((2.0 * j + a_ + 1.0 - x) * p -
                           std::sqrt(j * (j + a_)) * pm) /
                          std::sqrt((j + 1.0) * (j + 1.0 + a_));
        pm = p; p = pn;
        out[j + 1] = p;
    }
    return out;
}

Eigen::VectorXd LaguerreSystem::phi_tilde_all(double x) const {
    if (x <= 0)
        throw std::domain_error("LaguerreSystem: x > 0 required for tilde");
    return phi_all(x) / x;
}

double LaguerreSystem::phi(int j, double x) const {
    check(j, max_degree_);
    return phi_all(x)[j];
}

double LaguerreSystem::phi_tilde(int j, double x) const {
    check(j, max_degree_);
    return phi_tilde_all(x)[j];
}

double LaguerreSystem::phi_sym(int j, double x) const {
    check(j, max_degree_);
    return phi_tilde(j, x) * std::sqrt(x);
}

double LaguerreSystem::phi_deriv(int j, double x) const {
    check(j, max_degree_ - 1);
    Eigen::VectorXd pt = phi_tilde_all(x);
    const double lo = j >= 1 ? pt[j - 1] : 0.0;
    return 0.5 * std::sqrt((j + 1.0) * (j + a_ + 1.0)) * pt[j + 1] -
           0.5 * std::sqrt(j * (j + a_)) * lo;
}

double LaguerreSystem::phi_tilde_deriv(int j, double x) const {
    return phi_deriv(j, x) / x - phi(j, x) / (x * x);
}

double LaguerreSystem::phi_sym_deriv(int j, double x) const {
    // d/dx [phit sqrt(x)] = phit' sqrt(x) + phit/(2 sqrt x)
    return phi_tilde_deriv(j, x) * std::sqrt(x) +
           0.5 * phi_tilde(j, x) / std::sqrt(x);
}

double LaguerreSystem::tilde_total(int j) const {
    check(j, max_degree_);
    if (j % 2 == 1)
        return 0.0;
    // int_0^inf L_{2m}^{(a)} x^{(a-1)/2} e^{-x/2} dx
    //   = 2^{(a+1)/2} Gamma(m + (a+1)/2) / m!, normalized by c_{2m}
    const int m = j / 2;
    const double logc = 0.5 * (std::lgamma(j + a_ + 1.0) - std::lgamma(j + 1.0));
    return std::exp(0.5 * (a_ + 1.0) * std::log(2.0) +
                    std::lgamma(m + 0.5 * (a_ + 1.0)) - std::lgamma(m + 1.0) -
                    logc);
}

Eigen::VectorXd LaguerreSystem::eps_phi_tilde_all(double x) const {
    if (x < 0)
        throw std::domain_error("LaguerreSystem: x >= 0 required");
    // seed: eps phit_0 = [2^s gamma(s, x/2) - 2^{s-1} Gamma(s)] / sqrt(Gamma(a+1)),
    // s = (a+1)/2;  then phi_j = eps D phi_j gives
    // eps phit_{j+1} = [2 phi_j + sqrt(j(j+a)) eps phit_{j-1}] / sqrt((j+1)(j+a+1)).
    Eigen::VectorXd ph = phi_all(x);
    Eigen::VectorXd out(max_degree_ + 1);
    const double s = 0.5 * (a_ + 1.0);
    const double norm = std::exp(-0.5 * std::lgamma(a_ + 1.0));
    const double gam_s = std::exp(std::lgamma(s));
    out[0] = (std::pow(2.0, s) * gamma_p(s, 0.5 * x) * gam_s -
              std::pow(2.0, s - 1.0) * gam_s) * norm;
    if (max_degree_ >= 1)
        out[1] = 2.0 * ph[0] / std::sqrt(a_ + 1.0);
    for (int j = 1; j < max_degree_; ++j)
        out[j + 1] = (2.0 * ph[j] + std::sqrt(j * (j + a_)) * out[j - 1]) /
                     std::sqrt((j + 1.0) * (j + a_ + 1.0));
    return out;
}

double LaguerreSystem::eps_phi_tilde(int j, double x) const {
    check(j, max_degree_);
    return eps_phi_tilde_all(x)[j];
}

// ----------------------------------------------------------------- kernels

double bessel_kernel(double a, double x, double y) {
    if (x < 0 || y < 0)
        throw std::domain_error("bessel_kernel: x, y >= 0 required");
    auto jp = [a](double t) {
        return 0.5 * (bessel_j(a - 1.0, t) - bessel_j(a + 1.0, t));
    };
    if (std::abs(x - y) < 1e-7 * (1.0 + std::abs(x))) {
        const double t = 0.5 * (x + y);
        const double j = bessel_j(a, t);
        return 0.5 * (j * j - bessel_j(a - 1.0, t) * bessel_j(a + 1.0, t)) * t;
    }
    return (bessel_j(a, x) * y * jp(y) - bessel_j(a, y) * x * jp(x)) /
           (x * x - y * y) * x;
}

double sine_kernel(double x, double y) {
    const double t = x - y;
    if (std::abs(t) < 1e-8)
        return (1.0 - t * t / 6.0) / M_PI;
    return std::sin(t) / (M_PI * t);
}

} // namespace linstats
