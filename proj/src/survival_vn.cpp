#include "kuiper/survival_vn.hpp"

#include <cmath>
#include <string>

#include "kuiper/error.hpp"

namespace kuiper::vn {
namespace {

void require_positive(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::NumericalDomain, "critical value must be positive, got " + std::to_string(c));
  }
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::NumericalDomain, "tail probability must be positive");
  }
}

// A1 + A2 exp(-6c^2), the argument of the logarithm in both maps.
double log_argument(double c, double alpha, SampleSize n) {
  require_positive(c);
  require_alpha(alpha);
  const auto [a1, a2] = factors(c, n);
  const double arg = a1 + a2 * std::exp(-6.0 * c * c);
  if (!(arg > 0.0)) {
    throw Error(ErrorCode::NumericalDomain,
                "log of nonpositive quantity " + std::to_string(arg) + " at c = " + std::to_string(c));
  }
  return arg;
}

}  // namespace

double first_factor(double c, SampleSize n) {
  const double r = n.inv_sqrt();
  return -2.0 + 8.0 * c * r + 8.0 * c * c - 32.0 * c * c * c * r / 3.0;
}

double second_factor(double c, SampleSize n) {
  const double r = n.inv_sqrt();
  return -2.0 + 32.0 * c * r + 32.0 * c * c - 512.0 * c * c * c * r / 3.0;
}

Factors factors(double c, SampleSize n) { return {first_factor(c, n), second_factor(c, n)}; }

double survival(double c, SampleSize n) {
  const double c2 = c * c;
  return first_factor(c, n) * std::exp(-2.0 * c2) + second_factor(c, n) * std::exp(-8.0 * c2);
}

double series_survival(double c, SampleSize n, int terms) {
  if (terms < 1) throw Error(ErrorCode::OutOfRange, "series needs at least one term");
  const double c2 = c * c;
  double leading = 0.0;
  double correction = 0.0;
  for (int j = 1; j <= terms; ++j) {
    const double j2 = static_cast<double>(j) * j;
    const double decay = std::exp(-2.0 * j2 * c2);
    leading += 2.0 * (4.0 * j2 * c2 - 1.0) * decay;
    correction += j2 * (4.0 * j2 * c2 - 3.0) * decay;
  }
  return leading - 8.0 * c * n.inv_sqrt() / 3.0 * correction;
}

double residual(double c, double alpha, SampleSize n) {
  const double arg = log_argument(c, alpha, n);
  return 2.0 * c * c + std::log(alpha) - std::log(arg);
}

double contraction(double c, double alpha, SampleSize n) {
  const double radicand = (std::log(log_argument(c, alpha, n)) - std::log(alpha)) / 2.0;
  if (radicand < 0.0) {
    throw Error(ErrorCode::NumericalDomain, "negative radicand at c = " + std::to_string(c));
  }
  return std::sqrt(radicand);
}

}  // namespace kuiper::vn
