#include "doctest.h"

#include <cmath>

#include "linstats/quadrature.hpp"
#include "linstats/specfun.hpp"

using namespace linstats;

TEST_CASE("legendre composite grid basics") {
    QuadratureGrid g = QuadratureGrid::real_line(10.0, 4);
    CHECK(g.size() == 4);
    for (int i = 1; i < g.size(); ++i)
        CHECK(g.nodes()[i] > g.nodes()[i - 1]);
    CHECK(g.nodes()[0] > -10.0);
    CHECK(g.nodes()[3] < 10.0);
    // exactness for degree 0: weights sum to the measure of the domain
    CHECK(g.weights().sum() == doctest::Approx(20.0).epsilon(1e-13));
}

TEST_CASE("gaussian integral on truncated line") {
    QuadratureGrid g = QuadratureGrid::real_line(10.0, 60);
    Eigen::VectorXd f(g.size());
    for (int i = 0; i < g.size(); ++i)
        f[i] = std::exp(-g.nodes()[i] * g.nodes()[i]);
    CHECK(g.integrate(f) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-11));
}

TEST_CASE("native gauss rules") {
    {
        QuadratureGrid g = QuadratureGrid::gauss_hermite(40);
        Eigen::VectorXd f(g.size());
        for (int i = 0; i < g.size(); ++i) {
            const double x = g.nodes()[i];
            f[i] = x * x * std::exp(-x * x);
        }
        CHECK(g.integrate(f) == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-12));
    }
    {
        const double a = 1.5;
        QuadratureGrid g = QuadratureGrid::gauss_laguerre(40, a);
        Eigen::VectorXd f(g.size());
        for (int i = 0; i < g.size(); ++i)
            f[i] = std::exp(a * std::log(g.nodes()[i]) - g.nodes()[i]);
        CHECK(g.integrate(f) ==
              doctest::Approx(std::exp(log_gamma(a + 1.0))).epsilon(1e-12));
    }
    {
        // classical rules integrate polynomials against the measure
        GaussRule r = hermite_rule_classical(25);
        double s = 0.0;
        for (int i = 0; i < 25; ++i) s += r.weights[i] * std::pow(r.nodes[i], 4);
        CHECK(s == doctest::Approx(0.75 * std::sqrt(M_PI)).epsilon(1e-12));
        GaussRule l = laguerre_rule_classical(25, 0.5);
        double t = 0.0;
        for (int i = 0; i < 25; ++i) t += l.weights[i] * l.nodes[i];
        CHECK(t == doctest::Approx(std::exp(log_gamma(2.5))).epsilon(1e-12));
    }
}

TEST_CASE("graded half-line handles endpoint singularities") {
    QuadratureGrid g = QuadratureGrid::half_line(50.0, 768);
    Eigen::VectorXd f(g.size());
    for (int i = 0; i < g.size(); ++i) {
        const double x = g.nodes()[i];
        f[i] = std::pow(x, -0.3) * std::exp(-x);
    }
    // x^{-0.3} at the endpoint: the graded panels leave only the innermost
    // panel's contribution, ~1e-8 at this depth
    CHECK(g.integrate(f) ==
          doctest::Approx(std::exp(log_gamma(0.7))).epsilon(5e-8));
}

TEST_CASE("cumulative and derivative are panel-spectral") {
    QuadratureGrid g = QuadratureGrid::interval(0.0, 6.0, 160);
    Eigen::VectorXd c(g.size()), s(g.size());
    for (int i = 0; i < g.size(); ++i) {
        c[i] = std::cos(g.nodes()[i]);
        s[i] = std::sin(g.nodes()[i]);
    }
    Eigen::VectorXd cum = g.cumulative(c);
    Eigen::VectorXd der = g.derivative(s);
    CHECK((cum - s).lpNorm<Eigen::Infinity>() < 1e-12);
    CHECK((der - c).lpNorm<Eigen::Infinity>() < 1e-9);
}

TEST_CASE("mapped grid carries the jacobian") {
    // x = u^2 on (0, 3]: int e^{-x} dx = 1 - e^{-3}
    QuadratureGrid base = QuadratureGrid::interval(0.0, std::sqrt(3.0), 200);
    QuadratureGrid g = QuadratureGrid::mapped(
        std::move(base), [](double u) { return u * u; },
        [](double u) { return 2.0 * u; });
    Eigen::VectorXd f(g.size());
    for (int i = 0; i < g.size(); ++i) f[i] = std::exp(-g.nodes()[i]);
    CHECK(g.integrate(f) == doctest::Approx(1.0 - std::exp(-3.0)).epsilon(1e-12));
    Eigen::VectorXd cum = g.cumulative(f);
    for (int i = 0; i < g.size(); i += 37)
        CHECK(cum[i] ==
              doctest::Approx(1.0 - std::exp(-g.nodes()[i])).epsilon(1e-11));
}

TEST_CASE("invalid grids are rejected") {
    CHECK_THROWS_AS(QuadratureGrid::real_line(-1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(QuadratureGrid::interval(1.0, 0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(QuadratureGrid::gauss_laguerre(10, -1.5), std::invalid_argument);
    QuadratureGrid gh = QuadratureGrid::gauss_hermite(8);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(8);
    CHECK_THROWS_AS(gh.cumulative(v), std::logic_error);
}
