#include "kuiper/survival_vnn.hpp"

#include <cmath>
#include <string>

#include "kuiper/error.hpp"

namespace kuiper::vnn {
namespace {

double log_argument(double c, double alpha, SampleSize n) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::NumericalDomain, "critical value must be positive, got " + std::to_string(c));
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::NumericalDomain, "tail probability must be positive");
  }
  const auto [u1, u2] = factors(c, n);
  const double arg = u1 + u2 * std::exp(-3.0 * c * c);
  if (!(arg > 0.0)) {
    throw Error(ErrorCode::NumericalDomain,
                "log of nonpositive quantity " + std::to_string(arg) + " at c = " + std::to_string(c));
  }
  return arg;
}

}  // namespace

double first_factor(double c, SampleSize n) {
  const double x = c * c;
  double u1 = 2.0 * (2.0 * x - 1.0);
  if (!n.is_infinite()) {
    if (x > kMaxExponent) {
      throw Error(ErrorCode::Overflow, "exp(c^2) not representable for c = " + std::to_string(c));
    }
    u1 -= x * (2.0 * x - 7.0) * n.inv() / 6.0 + std::exp(x) * n.inv() / 6.0;
  }
  return u1;
}

double second_factor(double c, SampleSize n) {
  const double x = c * c;
  return 2.0 * (8.0 * x - 1.0) - 2.0 * x * (8.0 * x - 7.0) * n.inv() / 3.0;
}

Factors factors(double c, SampleSize n) { return {first_factor(c, n), second_factor(c, n)}; }

double survival(double c, SampleSize n) {
  const double x = c * c;
  return first_factor(c, n) * std::exp(-x) + second_factor(c, n) * std::exp(-4.0 * x);
}

double residual(double c, double alpha, SampleSize n) {
  const double arg = log_argument(c, alpha, n);
  return c * c + std::log(alpha) - std::log(arg);
}

double contraction(double c, double alpha, SampleSize n) {
  const double radicand = std::log(log_argument(c, alpha, n)) - std::log(alpha);
  if (radicand < 0.0) {
    throw Error(ErrorCode::NumericalDomain, "negative radicand at c = " + std::to_string(c));
  }
  return std::sqrt(radicand);
}

}  // namespace kuiper::vnn
