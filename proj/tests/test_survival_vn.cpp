#include <doctest.h>

#include <cmath>
#include <random>

#include "kuiper/fixed_point.hpp"
#include "kuiper/survival_vn.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace kuiper;

namespace {

const SampleSize kInf = SampleSize(SampleSize::kInfinityThreshold);

double solve_newton(double alpha, SampleSize n) {
  using Fn = double (*)(double, double, SampleSize);
  return solve_fixed_point(NewtonUpdater{}, Fn{&vn::residual}, AbsoluteDistance{}, SolverConfig{},
                           alpha, n)
      .value;
}

double solve_direct(double alpha, SampleSize n, double guess) {
  using Fn = double (*)(double, double, SampleSize);
  SolverConfig config;
  config.guess = guess;
  return solve_fixed_point(DirectUpdater{}, Fn{&vn::contraction}, AbsoluteDistance{}, config,
                           alpha, n)
      .value;
}

}  // namespace

TEST_CASE("1e16 maps to the infinite sample size") {
  CHECK(kInf.is_infinite());
  CHECK(kInf == SampleSize::infinite());
  CHECK(kInf.inv_sqrt() == 0.0);
  CHECK_FALSE(SampleSize(9'999'999'999'999'999ULL).is_infinite());
  CHECK_THROWS_CODE(SampleSize(0), OutOfRange);
}

TEST_CASE("polynomial factors") {
  CHECK_NEAR(vn::first_factor(0.5, kInf), 0.0, 1e-6);
  CHECK_NEAR(vn::first_factor(1.0, SampleSize(9)), 46.0 / 9.0, 1e-12);  // 5.1111
  CHECK_NEAR(vn::second_factor(0.25, kInf), 0.0, 1e-6);
  CHECK_NEAR(vn::second_factor(1.0, SampleSize(9)), -146.0 / 9.0, 1e-12);  // -16.2222
  CHECK_NEAR(vn::second_factor(2.0, SampleSize(100)), -4.133333333333333, 1e-12);

  for (double c : {0.6, 1.0, 1.7, 2.9}) {
    const auto f = vn::factors(c, kInf);
    CHECK(f.first == -2.0 + 8.0 * c * c);
    CHECK(f.second == -2.0 + 32.0 * c * c);
    CHECK(f.first > 0.0);
    CHECK(f.second > 0.0);
  }
}

TEST_CASE("second-order survival approximation") {
  CHECK_NEAR(vn::survival(1.60, SampleSize(10)), 0.0520, 5e-4);
  CHECK_NEAR(vn::survival(1.00, SampleSize(10)), 0.6930, 5e-4);
  CHECK_NEAR(vn::survival(1.9252, SampleSize(30)), 0.01, 5e-4);
  // High-precision reference values.
  CHECK_NEAR(vn::survival(1.60, SampleSize(10)), 0.05206004470168364, 1e-14);
  CHECK_NEAR(vn::survival(1.9252, SampleSize(30)), 0.009997873224457534, 1e-14);
}

TEST_CASE("series partial sums") {
  const SampleSize n30(30);
  CHECK_NEAR(vn::series_survival(1.6758, n30, 2), vn::survival(1.6758, n30), 1e-15);
  CHECK(std::abs(vn::series_survival(1.5, n30, 10) - vn::series_survival(1.5, n30, 2)) < 1e-6);
  // One-term truncation at 1.9253 gives 0.0099908...
  CHECK_NEAR(vn::series_survival(1.9253, n30, 1), 0.009990816602085857, 1e-13);
  CHECK_NEAR(vn::series_survival(1.9253, n30, 1), 0.01, 1e-4);
  CHECK_THROWS_CODE(vn::series_survival(1.0, n30, 0), OutOfRange);
}

TEST_CASE("two-term identity holds across a (c, n) grid") {
  for (int i = 0; i <= 24; ++i) {
    const double c = 0.6 + 0.1 * i;
    for (std::uint64_t count : {5, 10, 30, 100, 1000, 1'000'000}) {
      const SampleSize n(count);
      const double s = vn::survival(c, n);
      CHECK(std::abs(vn::series_survival(c, n, 2) - s) <= 1e-12 * std::abs(s));
      CHECK(std::abs(oracle::survival_vn_terms(c, static_cast<double>(count)) - s) <=
            1e-12 * std::abs(s));
    }
  }
}

TEST_CASE("residual vanishes at reference critical values") {
  CHECK_NEAR(vn::residual(1.6758, 0.05, SampleSize(30)), 0.0, 1e-3);
  CHECK_NEAR(vn::residual(1.9252, 0.01, SampleSize(30)), 0.0, 1e-3);
  CHECK_NEAR(vn::residual(2.0009, 0.01, kInf), 0.0, 1e-3);
}

TEST_CASE("log-domain failures raise instead of returning NaN") {
  CHECK_THROWS_CODE(vn::residual(0.2, 0.05, SampleSize(30)), NumericalDomain);
  CHECK_THROWS_CODE(vn::contraction(0.2, 0.05, SampleSize(30)), NumericalDomain);
  CHECK_THROWS_CODE(vn::residual(2.45, 0.05, SampleSize(5)), NumericalDomain);
  CHECK_THROWS_CODE(vn::residual(-1.0, 0.05, SampleSize(30)), NumericalDomain);
  CHECK_THROWS_CODE(vn::residual(1.5, 0.0, SampleSize(30)), NumericalDomain);
  // alpha large enough that ln(arg) - ln(alpha) < 0.
  CHECK_THROWS_CODE(vn::contraction(0.32, 0.9, SampleSize(30)), NumericalDomain);
}

TEST_CASE("contraction fixed points") {
  const SampleSize n30(30);
  const double c10 = solve_direct(0.10, n30, 1.2);
  const double c02 = solve_direct(0.02, n30, 1.2);
  CHECK_NEAR(c10, 1.5503, 5e-4);
  CHECK_NEAR(c02, 1.8235, 5e-4);
  CHECK_NEAR(vn::contraction(c10, 0.10, n30), c10, 1e-5);
  CHECK_NEAR(vn::contraction(c02, 0.02, n30), c02, 1e-5);
}

TEST_CASE("residual and contraction share roots") {
  // residual(c) = 2 (c^2 - contraction(c)^2), so each vanishes where the other does.
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> c_dist(0.7, 2.8);
  std::uniform_real_distribution<double> a_dist(0.001, 0.3);
  for (int i = 0; i < 500; ++i) {
    const double c = c_dist(rng);
    const double alpha = a_dist(rng);
    const SampleSize n(10 + i % 200);
    double g = 0.0;
    try {
      g = vn::contraction(c, alpha, n);
    } catch (const Error&) {
      continue;
    }
    CHECK_NEAR(vn::residual(c, alpha, n), 2.0 * (c * c - g * g), 1e-9);
  }
  for (double alpha : {0.01, 0.05, 0.10}) {
    const SampleSize n(40);
    const double root = solve_newton(alpha, n);
    CHECK(std::abs(vn::residual(root, alpha, n)) < 1e-6);
    CHECK(std::abs(vn::contraction(root, alpha, n) - root) < 1e-6);
    CHECK(std::abs(vn::residual(root + 0.01, alpha, n)) > 1e-6);
    CHECK(std::abs(vn::contraction(root + 0.01, alpha, n) - (root + 0.01)) > 1e-6);
  }
}

TEST_CASE("critical value decreases in alpha and grows with n") {
  for (std::uint64_t count : {10, 20, 30, 40, 100, 180}) {
    double previous = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 10; ++i) {
      const double c = solve_newton(0.01 * i, SampleSize(count));
      CHECK(c < previous);
      previous = c;
    }
  }
  for (double alpha : {0.01, 0.05, 0.10}) {
    double previous = 0.0;
    for (std::uint64_t count : {10, 20, 30, 40, 100, 180}) {
      const double c = solve_newton(alpha, SampleSize(count));
      CHECK(c >= previous);
      previous = c;
    }
  }
}

TEST_CASE("survival at the solved critical value returns alpha") {
  for (double alpha : {0.01, 0.02, 0.05, 0.10}) {
    for (std::uint64_t count : {10, 30, 100, 180, 1'000'000}) {
      const SampleSize n(count);
      CHECK_NEAR(vn::survival(solve_newton(alpha, n), n), alpha, 1e-6);
    }
  }
}
