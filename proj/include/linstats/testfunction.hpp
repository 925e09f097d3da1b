#ifndef LINSTATS_TESTFUNCTION_HPP
#define LINSTATS_TESTFUNCTION_HPP

#include <cmath>
#include <stdexcept>
#include <string>

// Smooth linear statistics F with exact derivative F', and the bulk /
// hard-edge scaling rules that center them.  The generating-function
// statistic is f_lambda = exp(-lambda F) - 1 with the exact derivative
// f_lambda' = -lambda F' exp(-lambda F); no numerical differentiation of
// f is ever used.

namespace linstats {

enum class StatFamily { Gaussian, Cauchy, HalflineBump };

struct TestFunction {
    StatFamily family = StatFamily::Gaussian;
    double center = 0.0;
    double width = 1.0;
    double amplitude = 1.0;   // 0 gives the zero statistic

    static TestFunction gaussian(double center = 0.0, double width = 1.0,
                                 double amplitude = 1.0) {
        return {StatFamily::Gaussian, center, width, amplitude};
    }
    static TestFunction cauchy(double center = 0.0, double width = 1.0,
                               double amplitude = 1.0) {
        return {StatFamily::Cauchy, center, width, amplitude};
    }
    // x^2 e^{-x/width}: smooth on [0,inf), vanishes at the hard edge
    static TestFunction halfline_bump(double width = 1.0, double amplitude = 1.0) {
        return {StatFamily::HalflineBump, 0.0, width, amplitude};
    }
    static TestFunction zero() { return gaussian(0.0, 1.0, 0.0); }

    double value(double x) const {
        const double t = (x - center) / width;
        switch (family) {
            case StatFamily::Gaussian: return amplitude * std::exp(-0.5 * t * t);
            case StatFamily::Cauchy:   return amplitude / (1.0 + t * t);
            case StatFamily::HalflineBump: {
                const double s = x / width;
                return amplitude * s * s * std::exp(-s);
            }
        }
        return 0.0;
    }
    double deriv(double x) const {
        const double t = (x - center) / width;
        switch (family) {
            case StatFamily::Gaussian:
                return -amplitude * t / width * std::exp(-0.5 * t * t);
            case StatFamily::Cauchy: {
                const double d = 1.0 + t * t;
                return -amplitude * 2.0 * t / (width * d * d);
            }
            case StatFamily::HalflineBump: {
                const double s = x / width;
                return amplitude * (2.0 * s - s * s) * std::exp(-s) / width;
            }
        }
        return 0.0;
    }

    // |F| < tol outside [center - r, center + r] (clamped for slow decay)
    double truncation_radius(double tol = 1e-13) const {
        switch (family) {
            case StatFamily::Gaussian:
                return std::abs(center) + width * std::sqrt(-2.0 * std::log(tol));
            case StatFamily::Cauchy:
                return std::abs(center) + width * std::min(1e3, 1.0 / std::sqrt(tol));
            case StatFamily::HalflineBump:
                return width * 60.0;
        }
        return 10.0;
    }

    std::string name() const {
        switch (family) {
            case StatFamily::Gaussian: return "gaussian";
            case StatFamily::Cauchy: return "cauchy";
            case StatFamily::HalflineBump: return "halfline-bump";
        }
        return "?";
    }
};

// Argument maps F(x) -> F(rule(x)) per ensemble: sqrt(2N)x for GOE/GUE,
// sqrt(4N)x for GSE, sqrt(4Nx) for LOE/LUE, sqrt(8Nx) for LSE.
struct ScalingRule {
    enum Kind { BulkSqrt2N, BulkSqrt4N, EdgeSqrt4Nx, EdgeSqrt8Nx, None } kind = None;
    int N = 0;

    double apply(double x) const {
        switch (kind) {
            case BulkSqrt2N: return std::sqrt(2.0 * N) * x;
            case BulkSqrt4N: return std::sqrt(4.0 * N) * x;
            case EdgeSqrt4Nx:
                if (x < 0) throw std::domain_error("scaling: x >= 0 required");
                return std::sqrt(4.0 * N * x);
            case EdgeSqrt8Nx:
                if (x < 0) throw std::domain_error("scaling: x >= 0 required");
                return std::sqrt(8.0 * N * x);
            case None: return x;
        }
        return x;
    }
};

} // namespace linstats

#endif
