#include "linstats/mcsample.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

namespace linstats {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

double chi_draw(std::mt19937_64& rng, double k) {
    std::gamma_distribution<double> g(0.5 * k, 2.0);
    return std::sqrt(g(rng));
}

void tridiag_eigs(std::vector<double>& d, std::vector<double>& e) {
    const auto n = static_cast<lapack_int>(d.size());
    const lapack_int info = LAPACKE_dsterf(n, d.data(), e.data());
    if (info != 0)
        throw std::runtime_error("dsterf failed to converge");
}

void sample_tridiagonal(const EnsembleSpec& spec, std::mt19937_64& rng,
                        Eigen::MatrixXd& out, int row0, int nrows) {
    const int N = spec.N;
    std::vector<double> d(N), e(N - 1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int r = 0; r < nrows; ++r) {
        if (spec.family == Family::Gaussian) {
            for (int i = 0; i < N; ++i) d[i] = gauss(rng);
            for (int i = 1; i < N; ++i)
                e[i - 1] = chi_draw(rng, spec.beta * (N - i)) / std::sqrt(2.0);
            tridiag_eigs(d, e);
            const double scale = spec.beta == 1 ? 1.0 : 1.0 / std::sqrt(2.0);
            for (int i = 0; i < N; ++i) d[i] *= scale;
        } else {
            const double a = spec.beta == 2 ? spec.alpha + N
                             : spec.beta == 4
                                 ? spec.alpha + 2.0 * N - 1.0
                                 : 0.5 * (spec.alpha + N + 1.0);
            std::vector<double> bd(N), be(N - 1);
            for (int i = 0; i < N; ++i)
                bd[i] = chi_draw(rng, 2.0 * a - spec.beta * i);
            for (int i = 1; i < N; ++i)
                be[i - 1] = chi_draw(rng, spec.beta * (N - i));
            // T = B B^t: diag d_i^2 + e_{i-1}^2, off-diag d_i e_i
            for (int i = 0; i < N; ++i)
                d[i] = bd[i] * bd[i] + (i > 0 ? be[i - 1] * be[i - 1] : 0.0);
            for (int i = 0; i < N - 1; ++i) e[i] = bd[i] * be[i];
            tridiag_eigs(d, e);
            const double scale = spec.beta == 1 ? 1.0 : 0.5;
            for (int i = 0; i < N; ++i) d[i] = std::max(0.0, d[i]) * scale;
        }
        std::sort(d.begin(), d.end());
        for (int i = 0; i < N; ++i) out(row0 + r, i) = d[i];
    }
}

double log_weight(const EnsembleSpec& spec, double x) {
    if (spec.family == Family::Gaussian)
        return spec.beta == 1 ? -0.5 * x * x : -x * x;
    if (x <= 0.0)
        return -std::numeric_limits<double>::infinity();
    if (spec.beta == 1)
        return 0.5 * spec.alpha * std::log(x) - 0.5 * x;
    return spec.alpha * std::log(x) - x;
}

double sample_mcmc(const EnsembleSpec& spec, std::mt19937_64& rng,
                   Eigen::MatrixXd& out, int row0, int nrows) {
    const int N = spec.N;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // start spread over the bulk
    std::vector<double> x(N);
    for (int i = 0; i < N; ++i) {
        if (spec.family == Family::Gaussian)
            x[i] = (i - 0.5 * (N - 1)) * 2.0 * std::sqrt(2.0 * N) / N;
        else
            x[i] = (i + 0.5) * 4.0 * N / N;
    }

    auto coord_logdens = [&](int i, double xi) {
        double s = log_weight(spec, xi);
        for (int j = 0; j < N; ++j)
            if (j != i) s += spec.beta * std::log(std::abs(xi - x[j]));
        return s;
    };

    double step = spec.family == Family::Gaussian ? 0.5 : 1.0;
    long accepted = 0, proposed = 0;
    auto sweep = [&]() {
        for (int i = 0; i < N; ++i) {
            const double xi_new = x[i] + step * gauss(rng);
            ++proposed;
            const double logr = coord_logdens(i, xi_new) - coord_logdens(i, x[i]);
            if (std::log(unif(rng) + 1e-300) < logr) {
                x[i] = xi_new;
                ++accepted;
            }
        }
    };

    const int burn = 10000;
    for (int s = 0; s < burn; ++s) {
        sweep();
        if ((s + 1) % 250 == 0) {  // step auto-tuning toward ~0.35 acceptance
            const double rate = static_cast<double>(accepted) / proposed;
            if (rate > 0.5) step *= 1.25;
            if (rate < 0.25) step /= 1.25;
            accepted = proposed = 0;
        }
    }
    accepted = proposed = 0;
    const int thin = std::max(2, N / 2);
    std::vector<double> sorted(N);
    for (int r = 0; r < nrows; ++r) {
        for (int t = 0; t < thin; ++t) sweep();
        sorted = x;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < N; ++i) out(row0 + r, i) = sorted[i];
    }
    return proposed > 0 ? static_cast<double>(accepted) / proposed : 0.0;
}

} // namespace

SampleBatch sample(const EnsembleSpec& spec, int count, std::uint64_t seed,
                   SampleMethod method) {
    spec.validate();
    if (count < 1)
        throw std::invalid_argument("sample: count >= 1");
    SampleBatch batch;
    batch.spec = spec;
    batch.count = count;
    batch.seed = seed;
    batch.method = method;
    batch.samples.resize(count, spec.N);

    // fixed stream layout; the merged batch is independent of how the
    // streams are scheduled
    const int streams = method == SampleMethod::Tridiagonal ? 8 : 2;
    int row = 0;
    double acc = 0.0;
    for (int s = 0; s < streams; ++s) {
        const int nrows = count / streams + (s < count % streams ? 1 : 0);
        if (nrows == 0) continue;
        std::mt19937_64 rng(splitmix64(seed ^ (0xabcd1234ull + s)));
        if (method == SampleMethod::Tridiagonal)
            sample_tridiagonal(spec, rng, batch.samples, row, nrows);
        else
            acc += sample_mcmc(spec, rng, batch.samples, row, nrows);
        row += nrows;
    }
    if (method == SampleMethod::MCMC) batch.mcmc_acceptance = acc / 2.0;
    return batch;
}

MomentReport linstat_moments(const SampleBatch& batch, const TestFunction& F,
                             const ScalingRule& rule) {
    const int n = batch.count;
    if (n < 2)
        throw std::invalid_argument("linstat_moments: need >= 2 samples");
    Eigen::VectorXd s(n);
    for (int r = 0; r < n; ++r) {
        double acc = 0.0;
        for (int j = 0; j < batch.spec.N; ++j)
            acc += F.value(rule.apply(batch.samples(r, j)));
        s[r] = acc;
    }
    MomentReport rep;
    rep.count = n;
    rep.method = batch.method == SampleMethod::Tridiagonal ? "tridiagonal" : "mcmc";
    const double S1 = s.sum(), S2 = s.squaredNorm();
    rep.mean = S1 / n;
    rep.variance = (S2 - S1 * S1 / n) / (n - 1);
    const double sd = std::sqrt(std::max(0.0, rep.variance));
    rep.se_mean = sd / std::sqrt(static_cast<double>(n));
    // delete-one jackknife for the variance estimator
    double jsum = 0.0, jsq = 0.0;
    for (int r = 0; r < n; ++r) {
        const double S1i = S1 - s[r], S2i = S2 - s[r] * s[r];
        const double vi = (S2i - S1i * S1i / (n - 1)) / (n - 2);
        jsum += vi;
        jsq += vi * vi;
    }
    const double jmean = jsum / n;
    rep.se_variance =
        std::sqrt(std::max(0.0, (n - 1.0) / n * (jsq - n * jmean * jmean)));
    return rep;
}

std::pair<double, double> mgf_estimate(const SampleBatch& batch,
                                       const TestFunction& F,
                                       const ScalingRule& rule, double lambda) {
    const int n = batch.count;
    Eigen::VectorXd g(n);
    for (int r = 0; r < n; ++r) {
        double acc = 0.0;
        for (int j = 0; j < batch.spec.N; ++j)
            acc += F.value(rule.apply(batch.samples(r, j)));
        g[r] = std::exp(-lambda * acc);
    }
    const double mean = g.mean();
    const double var = (g.array() - mean).square().sum() / (n - 1);
    return {mean, std::sqrt(var / n)};
}

void export_csv(const SampleBatch& batch, std::ostream& out) {
    for (int j = 0; j < batch.spec.N; ++j)
        out << (j ? "," : "") << "x" << j + 1;
    out << "\n";
    char buf[32];
    for (int r = 0; r < batch.count; ++r) {
        for (int j = 0; j < batch.spec.N; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", batch.samples(r, j));
            out << (j ? "," : "") << buf;
        }
        out << "\n";
    }
}

} // namespace linstats
