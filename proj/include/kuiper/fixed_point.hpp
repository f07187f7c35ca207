#pragma once

#include <cmath>
#include <concepts>
#include <limits>
#include <string>
#include <vector>

#include "kuiper/error.hpp"
#include "kuiper/sample_size.hpp"

namespace kuiper {

struct SolverConfig {
  double epsilon = 1e-5;
  double guess = 2.45;
  int max_iterations = 200;
  double derivative_step = 1e-5;

  // Throws Error(OutOfRange) when a field violates its invariant.
  void validate() const;
};

// Full iterate history c0, c1, ... of one solve.
struct IterationTrace {
  std::vector<double> iterates;
  bool converged = false;
  double final_distance = std::numeric_limits<double>::infinity();
};

struct FixedPointResult {
  double value = 0.0;
  IterationTrace trace;
};

// A scalar function of (c, alpha, n): a nonlinear residual or a contraction.
template <class F>
concept ScalarFunction = requires(const F& f, double c, double alpha, SampleSize n) {
  { f(c, alpha, n) } -> std::convertible_to<double>;
};

// Updating operator T(f, c, alpha, n).
template <class T, class F>
concept Updater = ScalarFunction<F> && requires(const T& t, const F& f, double c, double alpha,
                                                SampleSize n) {
  { t(f, c, alpha, n) } -> std::convertible_to<double>;
};

template <class D>
concept Metric = requires(const D& d, double x, double y) {
  { d(x, y) } -> std::convertible_to<double>;
};

// Newton slopes smaller than this in magnitude are treated as a flat region.
inline constexpr double kDerivativeFloor = 1e-12;

inline double distance(double x, double y) noexcept { return std::abs(x - y); }

template <ScalarFunction F>
double direct_update(const F& contraction, double c, double alpha, SampleSize n) {
  return contraction(c, alpha, n);
}

// One Newton step with a forward-difference slope of width h.
template <ScalarFunction F>
double newton_update(const F& residual, double c, double alpha, SampleSize n, double h) {
  const double value = residual(c, alpha, n);
  const double slope = (residual(c + h, alpha, n) - value) / h;
  if (!(std::abs(slope) >= kDerivativeFloor)) {
    throw Error(ErrorCode::DerivativeNearZero,
                "forward-difference slope " + std::to_string(slope) + " at c = " +
                    std::to_string(c));
  }
  return c - value / slope;
}

struct DirectUpdater {
  template <ScalarFunction F>
  double operator()(const F& f, double c, double alpha, SampleSize n) const {
    return direct_update(f, c, alpha, n);
  }
};

struct NewtonUpdater {
  double step = 1e-5;

  template <ScalarFunction F>
  double operator()(const F& f, double c, double alpha, SampleSize n) const {
    return newton_update(f, c, alpha, n, step);
  }
};

struct AbsoluteDistance {
  double operator()(double x, double y) const noexcept { return distance(x, y); }
};

namespace detail {
[[noreturn]] void throw_non_convergence(const IterationTrace& trace, int max_iterations);
[[noreturn]] void throw_non_finite_iterate(double previous);
}  // namespace detail

// Iterates improve <- T(f, guess, alpha, n) until dist(improve, guess) < epsilon.
// Each application of the updater counts as one iteration; more than
// config.max_iterations applications raise NonConvergence. A non-finite
// iterate raises NumericalDomain.
template <class T, class F, class D = AbsoluteDistance>
  requires Updater<T, F> && Metric<D>
FixedPointResult solve_fixed_point(const T& updater, const F& f, const D& dist,
                                   const SolverConfig& config, double alpha, SampleSize n) {
  config.validate();
  FixedPointResult result;
  auto& trace = result.trace;
  trace.iterates.reserve(static_cast<std::size_t>(config.max_iterations) + 1);

  double guess = config.guess;
  trace.iterates.push_back(guess);
  auto step = [&](double from) {
    const double next = updater(f, from, alpha, n);
    if (!std::isfinite(next)) detail::throw_non_finite_iterate(from);
    trace.iterates.push_back(next);
    return next;
  };

  double improve = step(guess);
  int applied = 1;
  trace.final_distance = dist(improve, guess);
  while (!(trace.final_distance < config.epsilon)) {
    if (applied >= config.max_iterations) detail::throw_non_convergence(trace, config.max_iterations);
    guess = improve;
    improve = step(guess);
    ++applied;
    trace.final_distance = dist(improve, guess);
  }
  trace.converged = true;
  result.value = improve;
  return result;
}

}  // namespace kuiper
