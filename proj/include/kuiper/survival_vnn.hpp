#pragma once

#include "kuiper/sample_size.hpp"

// Two-sample V_{n,n} test with equal sample sizes. With x = c^2:
//
//   alpha(c, n) = U1(c, n) exp(-x) + U2(c, n) exp(-4x)
//   U1(c, n)    = 2(2x - 1) - x(2x - 7)/(6n) - exp(x)/(6n)
//   U2(c, n)    = 2(8x - 1) - 2x(8x - 7)/(3n)
//
// The constant -1/(6n) of the expansion is folded into U1 through the
// exp(x)/(6n) term.
namespace kuiper::vnn {

struct Factors {
  double first = 0.0;   // U1
  double second = 0.0;  // U2
};

// exp(c^2) is evaluated only for finite n; c^2 above this raises Overflow.
inline constexpr double kMaxExponent = 700.0;

double first_factor(double c, SampleSize n);
double second_factor(double c, SampleSize n);
Factors factors(double c, SampleSize n);

double survival(double c, SampleSize n);

// c^2 + ln(alpha) - ln(U1 + U2 exp(-3c^2)).
double residual(double c, double alpha, SampleSize n);

// sqrt(ln(U1 + U2 exp(-3c^2)) - ln(alpha)).
double contraction(double c, double alpha, SampleSize n);

}  // namespace kuiper::vnn
