#include <doctest.h>

#include <cmath>
#include <limits>

#include "kuiper/fixed_point.hpp"
#include "kuiper/survival_vnn.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace kuiper;

namespace {

double solve_newton(double alpha, SampleSize n) {
  using Fn = double (*)(double, double, SampleSize);
  return solve_fixed_point(NewtonUpdater{}, Fn{&vnn::residual}, AbsoluteDistance{}, SolverConfig{},
                           alpha, n)
      .value;
}

}  // namespace

TEST_CASE("two-sample factors") {
  const auto inf = SampleSize::infinite();
  CHECK(vnn::first_factor(1.0, inf) == 2.0);
  CHECK(vnn::second_factor(1.0, inf) == 14.0);
  // x = 4: 14 - 4/60 - e^4/60
  CHECK_NEAR(vnn::first_factor(2.0, SampleSize(10)), 13.02336416611426, 1e-12);
  CHECK_NEAR(vnn::first_factor(2.0, SampleSize(10)), 13.0233, 1e-3);
  CHECK_NEAR(vnn::second_factor(1.0, SampleSize(3)), 124.0 / 9.0, 1e-12);  // 13.7778

  const double c = 1.0 / std::sqrt(8.0);
  const double x = c * c;
  for (std::uint64_t n : {1, 7, 100}) {
    CHECK_NEAR(vnn::second_factor(c, SampleSize(n)), -2.0 * x * (8.0 * x - 7.0) / (3.0 * n), 1e-14);
  }
}

TEST_CASE("large-n limit is exact") {
  const auto inf = SampleSize::infinite();
  for (double c : {0.5, 1.3, 2.2, 2.9, 30.0}) {
    CHECK(vnn::first_factor(c, inf) - 2.0 * (2.0 * c * c - 1.0) == 0.0);
    CHECK(vnn::second_factor(c, inf) - 2.0 * (8.0 * c * c - 1.0) == 0.0);
  }
}

TEST_CASE("exp(c^2) overflow guard") {
  CHECK_THROWS_CODE(vnn::first_factor(27.0, SampleSize(10)), Overflow);
  CHECK_THROWS_CODE(vnn::survival(27.0, SampleSize(10)), Overflow);
  CHECK_NOTHROW(vnn::first_factor(27.0, SampleSize::infinite()));
  CHECK_NOTHROW(vnn::first_factor(26.0, SampleSize(10)));
}

TEST_CASE("two-sample survival approximation") {
  CHECK_NEAR(vnn::survival(2.2740, SampleSize(30)), 0.10, 5e-4);
  CHECK_NEAR(vnn::survival(2.7351, SampleSize(30)), 0.01, 5e-4);
  CHECK_NEAR(vnn::survival(2.2905, SampleSize::infinite()), 0.10, 5e-4);
  CHECK_NEAR(vnn::survival(2.2740, SampleSize(30)), 0.09999730204267208, 1e-14);
}

TEST_CASE("folded form equals the two-term series with the 1/(6n) bracket") {
  for (int i = 0; i <= 30; ++i) {
    const double c = 1.0 + 0.1 * i;
    for (std::uint64_t n : {5, 10, 30, 100, 100'000'000}) {
      const double expected = oracle::survival_vnn_series(c, static_cast<double>(n), 2);
      CHECK(std::abs(vnn::survival(c, SampleSize(n)) - expected) <= 1e-12 * (1.0 + std::abs(expected)));
    }
  }
}

TEST_CASE("residual and contraction at reference values") {
  CHECK_NEAR(vnn::residual(2.4430, 0.05, SampleSize(30)), 0.0, 1e-3);
  CHECK_NEAR(vnn::residual(2.6124, 0.01, SampleSize(10)), 0.0, 1e-3);

  for (double alpha : {0.01, 0.05, 0.10}) {
    for (std::uint64_t n : {10, 30, 100}) {
      const double root = solve_newton(alpha, SampleSize(n));
      CHECK(std::abs(vnn::residual(root, alpha, SampleSize(n))) < 1e-6);
      CHECK(std::abs(vnn::contraction(root, alpha, SampleSize(n)) - root) < 1e-6);
      // residual(c) = c^2 - contraction(c)^2
      const double c = root + 0.05;
      const double g = vnn::contraction(c, alpha, SampleSize(n));
      CHECK_NEAR(vnn::residual(c, alpha, SampleSize(n)), c * c - g * g, 1e-9);
    }
  }
}

TEST_CASE("two-sample domain errors") {
  // U1 turns negative once exp(c^2)/(6n) dominates.
  CHECK_THROWS_CODE(vnn::residual(2.45, 0.05, SampleSize(1)), NumericalDomain);
  CHECK_THROWS_CODE(vnn::contraction(0.0, 0.05, SampleSize(10)), NumericalDomain);
}

TEST_CASE("two-sample critical value decreases in alpha; survival round trip") {
  for (std::uint64_t n : {10, 20, 30, 40, 100, 100'000'000}) {
    double previous = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 10; ++i) {
      const double alpha = 0.01 * i;
      const double c = solve_newton(alpha, SampleSize(n));
      CHECK(c < previous);
      previous = c;
      CHECK_NEAR(vnn::survival(c, SampleSize(n)), alpha, 1e-6);
    }
  }
}
