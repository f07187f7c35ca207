#include "kuiper/sample_size.hpp"

#include "kuiper/error.hpp"

namespace kuiper {

SampleSize::SampleSize(std::uint64_t n) : count_(n >= kInfinityThreshold ? 0 : n) {
  if (n == 0) throw Error(ErrorCode::OutOfRange, "sample size must be at least 1");
}

std::string SampleSize::to_string() const {
  return is_infinite() ? std::string("inf") : std::to_string(count_);
}

}  // namespace kuiper
