#ifndef LINSTATS_SPECFUN_HPP
#define LINSTATS_SPECFUN_HPP

#include <gmpxx.h>

// Scalar special functions shared by the kernel and asymptotics code:
// log-gamma, Bessel J of real order, the sine integral Si, the
// hypergeometric value 2F1(-N,1;3/2;2), and the exact binomial-sum
// identity sum_m (-1)^m/(m! prod(a+2l)) C(2n+a,2n-m+1) = 1/(2n+1)!.

namespace linstats {

// ln Gamma(x), x > 0.  Throws std::domain_error otherwise.
double log_gamma(double x);

// J_nu(x) for real order nu >= -1 and x >= 0.  Power series for small x
// (or when the order dominates), Miller backward recurrence with the
// Neumann-type normalization sum otherwise.
double bessel_j(double nu, double x);

// Si(x) = int_0^x sin t / t dt, any finite x.  Odd in x.
double sine_integral(double x);

// 2F1(-N,1;3/2;2) = int_0^1 (2x^2-1)^N dx, evaluated by the recurrence
// I_N = (1 - 2N I_{N-1})/(2N+1) that integration by parts gives for that
// integral.  Alternates in sign, ~ (-1)^N sqrt(pi/8N) for large N.
double hyp2f1_lemma22(long N);

// Exact rational value of
//   sum_{m=0}^{2n} (-1)^m / (m! prod_{l=m}^{2n}(alpha+2l)) * C(2n+alpha, 2n-m+1)
// for rational alpha > 0, with C(z,k) = prod_{i<k}(z-i)/k!.
// Equals 1/(2n+1)! for every alpha > 0.
mpq_class lemma23_lhs(long n, const mpq_class& alpha);

// Regularized lower incomplete gamma P(s,x) = gamma(s,x)/Gamma(s), s>0, x>=0.
// Used for the Laguerre epsilon-transform seed.
double gamma_p(double s, double x);

} // namespace linstats

#endif
