#include "kuiper/quantile.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "kuiper/survival_vn.hpp"
#include "kuiper/survival_vnn.hpp"

namespace kuiper {
namespace {

constexpr std::array<double, 7> kOneSampleGuesses{2.45, 2.2, 2.0, 1.8, 1.6, 1.4, 1.2};
constexpr std::array<double, 6> kTwoSampleGuesses{2.45, 2.3, 2.2, 2.0, 1.8, 1.6};

void require_open_unit(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream msg;
    msg << "tail probability " << alpha << " outside (0, 1)";
    throw Error(ErrorCode::OutOfRange, msg.str());
  }
}

FixedPointResult run_solver(const SolverConfig& config, double alpha, SampleSize n, TestKind kind,
                            IterationMethod method) {
  const NewtonUpdater newton{config.derivative_step};
  const DirectUpdater direct;
  const AbsoluteDistance dist;
  using Fn = double (*)(double, double, SampleSize);
  if (kind == TestKind::OneSample) {
    return method == IterationMethod::Direct
               ? solve_fixed_point(direct, Fn{&vn::contraction}, dist, config, alpha, n)
               : solve_fixed_point(newton, Fn{&vn::residual}, dist, config, alpha, n);
  }
  return method == IterationMethod::Direct
             ? solve_fixed_point(direct, Fn{&vnn::contraction}, dist, config, alpha, n)
             : solve_fixed_point(newton, Fn{&vnn::residual}, dist, config, alpha, n);
}

std::optional<std::string> window_warning(double guess, TestKind kind, IterationMethod method) {
  const GuessWindow window = recommended_window(kind, method);
  if (window.contains(guess)) return std::nullopt;
  std::ostringstream msg;
  msg << "initial guess " << guess << " lies outside the recommended window (" << window.lower
      << ", " << window.upper << ") for " << to_string(kind) << " " << to_string(method)
      << " iteration";
  return msg.str();
}

}  // namespace

std::string to_string(TestKind kind) {
  return kind == TestKind::OneSample ? "vn" : "vnn";
}

std::string to_string(IterationMethod method) {
  return method == IterationMethod::Direct ? "direct" : "newton";
}

GuessWindow recommended_window(TestKind kind, IterationMethod method) noexcept {
  if (kind == TestKind::OneSample) {
    return method == IterationMethod::Direct ? GuessWindow{0.5, 2.5} : GuessWindow{1.1, 2.5};
  }
  return method == IterationMethod::Direct ? GuessWindow{2.4, 2.6} : GuessWindow{2.2, 2.6};
}

std::span<const double> fallback_guesses(TestKind kind) noexcept {
  if (kind == TestKind::OneSample) return kOneSampleGuesses;
  return kTwoSampleGuesses;
}

PairSolution solve_kuiper_pair(const SolverConfig& config, double alpha, SampleSize n,
                               TestKind kind, IterationMethod method) {
  require_open_unit(alpha);
  PairSolution solution;
  solution.warning = window_warning(config.guess, kind, method);

  FixedPointResult fixed = run_solver(config, alpha, n, kind, method);
  const double c = fixed.value;
  if (kind == TestKind::OneSample && c <= vn::kAdmissibleLowerBound) {
    std::ostringstream msg;
    msg << "root c = " << c << " violates the necessary condition c > 0.5";
    throw Error(ErrorCode::InadmissibleRoot, msg.str());
  }
  solution.pair = KuiperPair{c, c * n.inv_sqrt(), alpha, n, kind};
  solution.trace = std::move(fixed.trace);
  return solution;
}

KuiperPair kuiper_pair_solver(double guess, double alpha, SampleSize n, TestKind kind,
                              IterationMethod method) {
  SolverConfig config;
  config.guess = guess;
  return solve_kuiper_pair(config, alpha, n, kind, method).pair;
}

PairSolution solve_kuiper_pair_with_fallback(double alpha, SampleSize n, TestKind kind,
                                             IterationMethod method) {
  require_open_unit(alpha);
  std::optional<Error> first_error;
  for (double guess : fallback_guesses(kind)) {
    SolverConfig config;
    config.guess = guess;
    try {
      return solve_kuiper_pair(config, alpha, n, kind, method);
    } catch (const Error& e) {
      if (!first_error) first_error = e;
    }
  }
  throw *first_error;
}

double kuiper_utq(double alpha, SampleSize n, GuessPolicy policy) {
  if (alpha >= kUpperTailGuard && alpha <= 1.0) return 0.0;
  if (alpha == 0.0) throw Error(ErrorCode::UnboundedQuantile, "no finite quantile for alpha = 0");
  require_open_unit(alpha);
  const PairSolution solution =
      policy == GuessPolicy::Fixed
          ? solve_kuiper_pair(SolverConfig{}, alpha, n, TestKind::OneSample, IterationMethod::Newton)
          : solve_kuiper_pair_with_fallback(alpha, n, TestKind::OneSample, IterationMethod::Newton);
  return solution.pair.quantile;
}

double kuiper_ltq(double alpha, SampleSize n, GuessPolicy policy) {
  if (alpha >= 0.0 && alpha <= kLowerTailGuard) return 0.0;
  if (alpha == 1.0) throw Error(ErrorCode::UnboundedQuantile, "no finite quantile for alpha = 1");
  require_open_unit(alpha);
  return kuiper_utq(1.0 - alpha, n, policy);
}

double kuiper_inv_cdf(double p, SampleSize n, GuessPolicy policy) {
  if (p == 1.0) throw Error(ErrorCode::UnboundedQuantile, "no finite quantile at p = 1");
  if (!(p >= 0.0 && p < 1.0)) {
    std::ostringstream msg;
    msg << "probability " << p << " outside [0, 1]";
    throw Error(ErrorCode::OutOfRange, msg.str());
  }
  return kuiper_utq(1.0 - p, n, policy);
}

}  // namespace kuiper
