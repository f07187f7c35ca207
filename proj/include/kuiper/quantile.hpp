#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "kuiper/fixed_point.hpp"
#include "kuiper/sample_size.hpp"

namespace kuiper {

enum class TestKind {
  OneSample,       // V_n
  TwoSampleEqual,  // V_{n,n}
};

enum class IterationMethod { Direct, Newton };

std::string to_string(TestKind kind);
std::string to_string(IterationMethod method);

// Critical value c on the sqrt(n) V scale together with the quantile
// v = c / sqrt(n) on the V scale. For infinite n the quantile is 0.
struct KuiperPair {
  double critical_value = 0.0;
  double quantile = 0.0;
  double alpha = 0.0;
  SampleSize n{1};
  TestKind kind = TestKind::OneSample;
};

// Empirical window of initial guesses known to converge.
struct GuessWindow {
  double lower = 0.0;
  double upper = 0.0;

  double midpoint() const noexcept { return 0.5 * (lower + upper); }
  bool contains(double guess) const noexcept { return guess > lower && guess < upper; }
};

GuessWindow recommended_window(TestKind kind, IterationMethod method) noexcept;

// Guesses tried in order by the fallback policy. The first entry is always
// the default 2.45.
std::span<const double> fallback_guesses(TestKind kind) noexcept;

inline constexpr double kDefaultGuess = 2.45;
inline constexpr double kUpperTailGuard = 0.9999;
inline constexpr double kLowerTailGuard = 0.0001;

struct PairSolution {
  KuiperPair pair;
  IterationTrace trace;
  std::optional<std::string> warning;  // set when the guess is outside its window
};

// Solves for the pair from config.guess with the given method. Throws
// NonConvergence, NumericalDomain, DerivativeNearZero, Overflow, or
// InadmissibleRoot (one-sample root <= 0.5). alpha must lie in (0, 1).
PairSolution solve_kuiper_pair(const SolverConfig& config, double alpha, SampleSize n,
                               TestKind kind, IterationMethod method);

KuiperPair kuiper_pair_solver(double guess, double alpha, SampleSize n,
                              TestKind kind = TestKind::OneSample,
                              IterationMethod method = IterationMethod::Newton);

// Tries fallback_guesses(kind) in order and returns the first successful
// solve. When all fail, the error from the first guess is rethrown.
PairSolution solve_kuiper_pair_with_fallback(double alpha, SampleSize n, TestKind kind,
                                             IterationMethod method = IterationMethod::Newton);

enum class GuessPolicy {
  Fixed,     // single Newton solve from 2.45
  Fallback,  // retry along fallback_guesses() on solver failure
};

// Upper tail quantile of V_n: Pr{V_n > v} = alpha. Returns 0 for
// alpha >= 0.9999; alpha == 0 raises UnboundedQuantile.
double kuiper_utq(double alpha, SampleSize n, GuessPolicy policy = GuessPolicy::Fixed);

// Lower tail quantile of V_n: Pr{V_n <= v} = alpha, computed as
// kuiper_utq(1 - alpha). Returns 0 for alpha <= 0.0001.
double kuiper_ltq(double alpha, SampleSize n, GuessPolicy policy = GuessPolicy::Fixed);

// Inverse CDF of V_n, delegating to kuiper_utq(1 - p). p == 1 raises
// UnboundedQuantile.
double kuiper_inv_cdf(double p, SampleSize n, GuessPolicy policy = GuessPolicy::Fixed);

}  // namespace kuiper
