#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace kuiper {

// Sample capacity n, or the n -> infinity limit. Counts at or above
// kInfinityThreshold are treated as the limit, in which case every 1/sqrt(n)
// and 1/n correction term is exactly zero instead of merely tiny.
class SampleSize {
 public:
  static constexpr std::uint64_t kInfinityThreshold = 10'000'000'000'000'000ULL;  // 1e16

  // n must be >= 1.
  explicit SampleSize(std::uint64_t n);

  static SampleSize infinite() noexcept { return SampleSize(); }

  bool is_infinite() const noexcept { return count_ == 0; }
  // Only meaningful when finite.
  std::uint64_t count() const noexcept { return count_; }

  double sqrt() const noexcept {
    return is_infinite() ? std::numeric_limits<double>::infinity()
                         : std::sqrt(static_cast<double>(count_));
  }
  double inv_sqrt() const noexcept {
    return is_infinite() ? 0.0 : 1.0 / std::sqrt(static_cast<double>(count_));
  }
  double inv() const noexcept {
    return is_infinite() ? 0.0 : 1.0 / static_cast<double>(count_);
  }

  std::string to_string() const;

  friend bool operator==(const SampleSize&, const SampleSize&) = default;

 private:
  SampleSize() = default;
  std::uint64_t count_ = 0;  // 0 encodes infinity
};

}  // namespace kuiper
