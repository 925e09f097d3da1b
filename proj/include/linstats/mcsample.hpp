#ifndef LINSTATS_MCSAMPLE_HPP
#define LINSTATS_MCSAMPLE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>

#include "linstats/ensembles.hpp"
#include "linstats/testfunction.hpp"

// Monte Carlo sampling from the ensemble jpdfs.  Two independent paths:
// the tridiagonal beta-ensemble models (chi off-diagonals, eigenvalues by
// LAPACK dsterf) with affine maps onto the weight conventions used here,
// and random-walk Metropolis on the log-jpdf, which is exact for any
// weight and serves as the validation reference for those maps.
//
// Tridiagonal normalization: with diagonal N(0,1) and off-diagonals
// chi_{beta(N-k)}/sqrt(2), the eigenvalue density is
// prod |Delta|^beta exp(-sum x^2/2) for every beta, hence
//   GOE (e^{-x^2/2}): x -> x      GUE/GSE (e^{-x^2}): x -> x/sqrt(2).
// Laguerre (B B^t with diag chi_{2a-beta(k-1)}, sub chi_{beta(N-k)}):
// density prod |Delta|^beta prod x^{a - beta(N-1)/2 - 1} e^{-x/2}, so
//   LUE:  a = alpha + N,        x -> x/2
//   LSE:  a = alpha + 2N - 1,   x -> x/2
//   LOE:  a = (alpha + N + 1)/2, x -> x.

namespace linstats {

enum class SampleMethod { Tridiagonal, MCMC };

struct SampleBatch {
    EnsembleSpec spec;
    int count = 0;
    std::uint64_t seed = 0;
    SampleMethod method = SampleMethod::Tridiagonal;
    Eigen::MatrixXd samples;      // count x N, each row sorted ascending
    double mcmc_acceptance = 0.0; // filled by the MCMC path
};

SampleBatch sample(const EnsembleSpec& spec, int count, std::uint64_t seed,
                   SampleMethod method = SampleMethod::Tridiagonal);

struct MomentReport {
    double mean = 0.0;
    double variance = 0.0;
    double se_mean = 0.0;
    double se_variance = 0.0;  // delete-one jackknife
    int count = 0;
    std::string method;
};

// moments of sum_j F(rule(x_j)) over the batch
MomentReport linstat_moments(const SampleBatch& batch, const TestFunction& F,
                             const ScalingRule& rule);

// sample mean of exp(-lambda sum F(rule(x_j))), with its standard error
std::pair<double, double> mgf_estimate(const SampleBatch& batch,
                                       const TestFunction& F,
                                       const ScalingRule& rule, double lambda);

// one row per sample, columns = sorted eigenvalues
void export_csv(const SampleBatch& batch, std::ostream& out);

} // namespace linstats

#endif
