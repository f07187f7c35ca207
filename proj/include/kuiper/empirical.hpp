#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kuiper/quantile.hpp"

namespace kuiper {

struct EmpiricalResult {
  double d_plus = 0.0;   // sup (F1 - F2)
  double d_minus = 0.0;  // sup (F2 - F1)
  double v = 0.0;        // d_plus + d_minus
  double k = 0.0;        // sqrt(n) * v
  std::uint64_t n = 0;
};

struct TestDecision {
  EmpiricalResult statistic;
  double alpha = 0.0;
  double quantile = 0.0;
  bool reject = false;  // statistic.v > quantile, strictly
};

// Statistic of a sample against its hypothesized CDF. The input holds the
// probability-integral-transformed values u_(i) = F0(x_(i)), sorted ascending.
// Throws EmptyInput, OutOfRange, or UnsortedInput.
EmpiricalResult kuiper_statistic_one_sample(std::span<const double> probabilities);

// Statistic between the ECDFs of two equally sized sorted samples. Throws
// EmptyInput, LengthMismatch, or UnsortedInput.
EmpiricalResult kuiper_statistic_two_sample(std::span<const double> sample_a,
                                            std::span<const double> sample_b);

// Compares the statistic against the upper tail quantile for (alpha, n, kind).
TestDecision run_test(const EmpiricalResult& result, double alpha, TestKind kind);

// Approximate one-sample p-value survival(sqrt(n) V, n), clamped to [0, 1].
// Statistics with sqrt(n) V <= 0.5 fall outside the approximation's region of
// validity and report 1.
double approximate_p_value(const EmpiricalResult& result);

// V_n for `replications` samples of n uniforms drawn from a generator seeded
// with `seed`. Output is identical across runs of the same build.
std::vector<double> simulate_statistics(std::uint64_t n, std::uint64_t replications,
                                        std::uint64_t seed);

// Fraction of simulated V_n strictly above v_threshold.
double monte_carlo_exceedance(std::uint64_t n, double v_threshold, std::uint64_t replications,
                              std::uint64_t seed);

}  // namespace kuiper
