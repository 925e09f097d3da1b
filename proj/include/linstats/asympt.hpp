#ifndef LINSTATS_ASYMPT_HPP
#define LINSTATS_ASYMPT_HPP

#include <string>
#include <utility>
#include <vector>

#include "linstats/testfunction.hpp"

// Large-N mean/variance expansions of the scaled linear statistics, as
// displayed in the source theorems: GUE/LUE limits, and the beta = 1, 4
// expansions with their oscillatory and 1/N correction terms.  Each term
// is reported separately.  Variances are not clamped: a negative value at
// small N is flagged, not hidden.

namespace linstats {

struct AsymptoticReport {
    std::string ensemble;
    int N = 0;                       // 0 means the plain N -> infinity limit
    double mean = 0.0;
    double variance = 0.0;
    std::vector<std::pair<std::string, double>> mean_terms;
    std::vector<std::pair<std::string, double>> variance_terms;
    bool variance_negative = false;
};

// lim mean = (1/pi) int F, lim var = (1/pi) int F^2 - iint sine^2 F F
std::pair<double, double> gue_limits(const TestFunction& F, int n_nodes = 0);

// lim mean = int B^(a)(x,x) F, lim var = int B(x,x) F^2 - iint B(x,y)B(y,x) F F
std::pair<double, double> lue_limits(const TestFunction& F, double alpha,
                                     int n_nodes = 0);

AsymptoticReport gse_expansion(const TestFunction& F, int N, int n_nodes = 0);
AsymptoticReport goe_expansion(const TestFunction& F, int N, int n_nodes = 0);
AsymptoticReport lse_expansion(const TestFunction& F, double alpha, int N,
                               int n_nodes = 0);
AsymptoticReport loe_expansion(const TestFunction& F, double alpha, int N,
                               int n_nodes = 0);

} // namespace linstats

#endif
