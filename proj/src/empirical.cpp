#include "kuiper/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "kuiper/error.hpp"
#include "kuiper/survival_vn.hpp"

namespace kuiper {
namespace {

void require_sorted(std::span<const double> values, const char* what) {
  if (!std::is_sorted(values.begin(), values.end())) {
    throw Error(ErrorCode::UnsortedInput, std::string(what) + " is not sorted ascending");
  }
}

EmpiricalResult make_result(double d_plus, double d_minus, std::uint64_t n) {
  EmpiricalResult r;
  r.d_plus = std::max(d_plus, 0.0);
  r.d_minus = std::max(d_minus, 0.0);
  r.v = r.d_plus + r.d_minus;
  r.k = std::sqrt(static_cast<double>(n)) * r.v;
  r.n = n;
  return r;
}

// Uniform double in [0, 1) from the top 53 bits; avoids the
// implementation-defined std::uniform_real_distribution.
double to_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace

EmpiricalResult kuiper_statistic_one_sample(std::span<const double> probabilities) {
  if (probabilities.empty()) throw Error(ErrorCode::EmptyInput, "no observations");
  for (double u : probabilities) {
    if (!(u >= 0.0 && u <= 1.0)) {
      std::ostringstream msg;
      msg << "probability " << u << " outside [0, 1]";
      throw Error(ErrorCode::OutOfRange, msg.str());
    }
  }
  require_sorted(probabilities, "probabilities");

  const auto n = static_cast<std::uint64_t>(probabilities.size());
  const double inv_n = 1.0 / static_cast<double>(n);
  double d_plus = 0.0;
  double d_minus = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double u = probabilities[i];
    d_plus = std::max(d_plus, static_cast<double>(i + 1) * inv_n - u);
    d_minus = std::max(d_minus, u - static_cast<double>(i) * inv_n);
  }
  return make_result(d_plus, d_minus, n);
}

EmpiricalResult kuiper_statistic_two_sample(std::span<const double> sample_a,
                                            std::span<const double> sample_b) {
  if (sample_a.empty() || sample_b.empty()) throw Error(ErrorCode::EmptyInput, "empty sample");
  if (sample_a.size() != sample_b.size()) {
    throw Error(ErrorCode::LengthMismatch, "two-sample statistic requires equal sample sizes");
  }
  require_sorted(sample_a, "first sample");
  require_sorted(sample_b, "second sample");

  // Walk the merged breakpoints; after consuming every copy of the current
  // value from both samples, the counts give the right-continuous ECDFs.
  const std::size_t n = sample_a.size();
  std::size_t i = 0;
  std::size_t j = 0;
  long long diff = 0;  // n * (ECDF_a - ECDF_b)
  long long max_diff = 0;
  long long min_diff = 0;
  while (i < n || j < n) {
    const double x = (j == n || (i < n && sample_a[i] <= sample_b[j])) ? sample_a[i] : sample_b[j];
    while (i < n && sample_a[i] == x) {
      ++i;
      ++diff;
    }
    while (j < n && sample_b[j] == x) {
      ++j;
      --diff;
    }
    max_diff = std::max(max_diff, diff);
    min_diff = std::min(min_diff, diff);
  }
  const double scale = 1.0 / static_cast<double>(n);
  return make_result(static_cast<double>(max_diff) * scale, static_cast<double>(-min_diff) * scale,
                     static_cast<std::uint64_t>(n));
}

TestDecision run_test(const EmpiricalResult& result, double alpha, TestKind kind) {
  if (result.n == 0) throw Error(ErrorCode::EmptyInput, "statistic has no observations");
  const SampleSize n(result.n);
  TestDecision decision;
  decision.statistic = result;
  decision.alpha = alpha;
  decision.quantile =
      kind == TestKind::OneSample
          ? kuiper_utq(alpha, n, GuessPolicy::Fallback)
          : solve_kuiper_pair_with_fallback(alpha, n, kind, IterationMethod::Newton).pair.quantile;
  decision.reject = result.v > decision.quantile;
  return decision;
}

double approximate_p_value(const EmpiricalResult& result) {
  if (result.k <= vn::kAdmissibleLowerBound) return 1.0;
  return std::clamp(vn::survival(result.k, SampleSize(result.n)), 0.0, 1.0);
}

std::vector<double> simulate_statistics(std::uint64_t n, std::uint64_t replications,
                                        std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::OutOfRange, "sample size must be at least 1");
  std::mt19937_64 engine(seed);
  std::vector<double> sample(n);
  std::vector<double> statistics;
  statistics.reserve(replications);
  for (std::uint64_t r = 0; r < replications; ++r) {
    for (double& u : sample) u = to_unit(engine());
    std::sort(sample.begin(), sample.end());
    statistics.push_back(kuiper_statistic_one_sample(sample).v);
  }
  return statistics;
}

double monte_carlo_exceedance(std::uint64_t n, double v_threshold, std::uint64_t replications,
                              std::uint64_t seed) {
  if (replications == 0) throw Error(ErrorCode::OutOfRange, "replications must be at least 1");
  const std::vector<double> stats = simulate_statistics(n, replications, seed);
  const auto above = std::count_if(stats.begin(), stats.end(),
                                   [v_threshold](double v) { return v > v_threshold; });
  return static_cast<double>(above) / static_cast<double>(replications);
}

}  // namespace kuiper
