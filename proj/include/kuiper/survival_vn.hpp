#pragma once

#include "kuiper/sample_size.hpp"

// One-sample V_n test: two-term truncation of the asymptotic expansion of
// Pr{sqrt(n) V_n > c}, written as
//
//   alpha(c, n) = A1(c, n) exp(-2c^2) + A2(c, n) exp(-8c^2)
//   A1(c, n)    = -2 +  8c/sqrt(n) +  8c^2 -  32c^3/(3 sqrt(n))
//   A2(c, n)    = -2 + 32c/sqrt(n) + 32c^2 - 512c^3/(3 sqrt(n))
//
// Taking logs gives the residual 2c^2 + ln(alpha) - ln(A1 + A2 exp(-6c^2)),
// whose roots are the fixed points of the contraction
// sqrt((ln(A1 + A2 exp(-6c^2)) - ln(alpha)) / 2).
namespace kuiper::vn {

struct Factors {
  double first = 0.0;   // A1
  double second = 0.0;  // A2
};

double first_factor(double c, SampleSize n);
double second_factor(double c, SampleSize n);
Factors factors(double c, SampleSize n);

// Second-order approximation of Pr{sqrt(n) V_n > c}. Not clamped: values
// outside (0, 1) are possible for c outside the region of validity.
double survival(double c, SampleSize n);

// Partial sums of the full series, keeping j = 1..terms in both sums.
// terms == 2 is algebraically identical to survival().
double series_survival(double c, SampleSize n, int terms = 2);

// Nonlinear residual for Newton iteration. Throws NumericalDomain when the
// log argument is not positive.
double residual(double c, double alpha, SampleSize n);

// Direct-iteration map. Throws NumericalDomain when the log argument or the
// radicand is negative.
double contraction(double c, double alpha, SampleSize n);

// Smallest admissible critical value; roots at or below it are discarded.
inline constexpr double kAdmissibleLowerBound = 0.5;

}  // namespace kuiper::vn
