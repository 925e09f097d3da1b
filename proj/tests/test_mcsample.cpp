#include "doctest.h"

#include <cmath>
#include <sstream>

#include "linstats/asympt.hpp"
#include "linstats/mcsample.hpp"

using namespace linstats;

namespace {
const TestFunction Fg = TestFunction::gaussian();
}

TEST_CASE("N=1 reductions to the bare weight") {
    // beta=1 Gaussian, N=1: standard normal
    EnsembleSpec spec{Family::Gaussian, 1, 1, 0.0};
    SampleBatch b = sample(spec, 100000, 42);
    Eigen::VectorXd x = b.samples.col(0);
    const double mean = x.mean();
    const double var = (x.array() - mean).square().sum() / (b.count - 1);
    const double se_var = var * std::sqrt(2.0 / (b.count - 1));
    CHECK(std::abs(mean) < 3.0 * std::sqrt(var / b.count));
    CHECK(std::abs(var - 1.0) < 3.0 * se_var);

    // beta=2 Laguerre alpha=0, N=1: Exp(1)
    EnsembleSpec le{Family::Laguerre, 2, 1, 0.0};
    SampleBatch bl = sample(le, 100000, 7);
    Eigen::VectorXd y = bl.samples.col(0);
    const double m = y.mean();
    const double s = std::sqrt((y.array() - m).square().sum() / (bl.count - 1));
    CHECK(std::abs(m - 1.0) < 3.0 * s / std::sqrt(1.0 * bl.count));
}

TEST_CASE("N=2 GUE gap moment vs 2-d quadrature") {
    EnsembleSpec spec{Family::Gaussian, 2, 2, 0.0};
    SampleBatch b = sample(spec, 60000, 11);
    Eigen::VectorXd gap2(b.count);
    for (int r = 0; r < b.count; ++r) {
        const double d = b.samples(r, 0) - b.samples(r, 1);
        gap2[r] = d * d;
    }
    const double mean = gap2.mean();
    const double se = std::sqrt((gap2.array() - mean).square().sum() /
                                (b.count - 1) / b.count);
    // oracle: E[(x1-x2)^2] under prod (x1-x2)^2 e^{-x^2} via Gauss-Hermite
    GaussRule r = hermite_rule_classical(60);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 60; ++i)
        for (int j = 0; j < 60; ++j) {
            const double d = r.nodes[i] - r.nodes[j];
            const double w = r.weights[i] * r.weights[j] * d * d;
            den += w;
            num += w * d * d;
        }
    CHECK(std::abs(mean - num / den) < 3.0 * se);
}

TEST_CASE("seeded determinism is bit-identical") {
    EnsembleSpec spec{Family::Gaussian, 4, 6, 0.0};
    SampleBatch a = sample(spec, 500, 123);
    SampleBatch b = sample(spec, 500, 123);
    CHECK((a.samples - b.samples).lpNorm<Eigen::Infinity>() == 0.0);
    SampleBatch c = sample(spec, 500, 124);
    CHECK((a.samples - c.samples).lpNorm<Eigen::Infinity>() != 0.0);
}

TEST_CASE("tridiagonal vs MCMC at N=4: four moments of sum x") {
    for (const auto& spec :
         {EnsembleSpec{Family::Gaussian, 4, 4, 0.0},
          EnsembleSpec{Family::Gaussian, 1, 4, 0.0},
          EnsembleSpec{Family::Laguerre, 2, 4, 1.0},
          EnsembleSpec{Family::Laguerre, 1, 4, 1.5},
          EnsembleSpec{Family::Laguerre, 4, 4, 2.0}}) {
        SampleBatch bt = sample(spec, 40000, 5);
        SampleBatch bm = sample(spec, 12000, 6, SampleMethod::MCMC);
        CHECK(bm.mcmc_acceptance > 0.2);
        CHECK(bm.mcmc_acceptance < 0.6);
        for (int k = 1; k <= 4; ++k) {
            auto moment = [&](const SampleBatch& b, double& se) {
                Eigen::VectorXd s = b.samples.rowwise().sum();
                Eigen::VectorXd p = s.array().pow(k);
                const double m = p.mean();
                se = std::sqrt((p.array() - m).square().sum() /
                               (b.count - 1) / b.count);
                return m;
            };
            double se_t, se_m;
            const double mt = moment(bt, se_t);
            const double mm = moment(bm, se_m);
            // MCMC samples are correlated; allow an autocorrelation margin
            const double joint =
                std::sqrt(se_t * se_t + 6.0 * se_m * se_m) + 1e-12;
            CHECK(std::abs(mt - mm) < 4.0 * joint);
        }
    }
}

TEST_CASE("scaling rules per ensemble") {
    auto rule = [](Family f, int beta) {
        return EnsembleSpec{f, beta, 10, 1.0}.scaling();
    };
    CHECK(rule(Family::Gaussian, 1).kind == ScalingRule::BulkSqrt2N);
    CHECK(rule(Family::Gaussian, 2).kind == ScalingRule::BulkSqrt2N);
    CHECK(rule(Family::Gaussian, 4).kind == ScalingRule::BulkSqrt4N);
    CHECK(rule(Family::Laguerre, 1).kind == ScalingRule::EdgeSqrt4Nx);
    CHECK(rule(Family::Laguerre, 2).kind == ScalingRule::EdgeSqrt4Nx);
    CHECK(rule(Family::Laguerre, 4).kind == ScalingRule::EdgeSqrt8Nx);
    CHECK(rule(Family::Gaussian, 4).apply(0.5) ==
          doctest::Approx(Fg.value(0.0) * 0.0 + std::sqrt(40.0) * 0.5));
    CHECK(rule(Family::Laguerre, 4).apply(0.5) ==
          doctest::Approx(std::sqrt(8.0 * 10 * 0.5)));
}

TEST_CASE("linstat moments and zero statistic") {
    EnsembleSpec spec{Family::Gaussian, 1, 4, 0.0};
    SampleBatch b = sample(spec, 4000, 9);
    MomentReport rep = linstat_moments(b, TestFunction::zero(), spec.scaling());
    CHECK(rep.mean == 0.0);
    CHECK(rep.variance == 0.0);

    MomentReport r2 = linstat_moments(b, Fg, spec.scaling());
    CHECK(r2.count == 4000);
    CHECK(r2.variance > 0.0);
    CHECK(r2.se_mean > 0.0);
    CHECK(r2.se_variance > 0.0);
}

TEST_CASE("mgf estimate: unit at lambda 0, monotone in lambda") {
    EnsembleSpec spec{Family::Gaussian, 4, 2, 0.0};
    SampleBatch b = sample(spec, 30000, 3);
    auto [v0, s0] = mgf_estimate(b, Fg, {}, 0.0);
    CHECK(v0 == 1.0);
    CHECK(s0 == 0.0);
    auto [v3, s3] = mgf_estimate(b, Fg, {}, 0.3);
    auto [v6, s6] = mgf_estimate(b, Fg, {}, 0.6);
    CHECK(v6 <= v3 + s3 + s6);
    // against the determinant at small N
    const double det = std::sqrt(mgf_squared(spec, Fg, 0.3));
    CHECK(std::abs(v3 - det) < 3.0 * s3);
}

TEST_CASE("GOE N=50 sample mean vs the expansion") {
    EnsembleSpec spec{Family::Gaussian, 1, 50, 0.0};
    SampleBatch b = sample(spec, 20000, 77);
    MomentReport rep = linstat_moments(b, Fg, spec.scaling());
    AsymptoticReport th = goe_expansion(Fg, 50);
    CHECK(std::abs(rep.mean - th.mean) < 3.0 * rep.se_mean);
}

TEST_CASE("chain-doubling diagnostic") {
    EnsembleSpec spec{Family::Gaussian, 1, 4, 0.0};
    SampleBatch b1 = sample(spec, 6000, 21, SampleMethod::MCMC);
    SampleBatch b2 = sample(spec, 12000, 22, SampleMethod::MCMC);
    MomentReport r1 = linstat_moments(b1, Fg, spec.scaling());
    MomentReport r2 = linstat_moments(b2, Fg, spec.scaling());
    const double joint = std::sqrt(r1.se_mean * r1.se_mean +
                                   r2.se_mean * r2.se_mean);
    CHECK(std::abs(r1.mean - r2.mean) < 2.0 * (3.0 * joint));
}

TEST_CASE("csv export") {
    EnsembleSpec spec{Family::Laguerre, 2, 3, 1.0};
    SampleBatch b = sample(spec, 5, 2);
    std::ostringstream os;
    export_csv(b, os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "x1,x2,x3");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 5);
    // eigenvalues sorted and nonnegative for Laguerre
    for (int r = 0; r < 5; ++r) {
        CHECK(b.samples(r, 0) >= 0.0);
        CHECK(b.samples(r, 0) <= b.samples(r, 1));
        CHECK(b.samples(r, 1) <= b.samples(r, 2));
    }
}
