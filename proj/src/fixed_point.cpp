#include "kuiper/fixed_point.hpp"

#include <sstream>

namespace kuiper {

void SolverConfig::validate() const {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::OutOfRange, "epsilon must be positive");
  if (!(guess > 0.0)) throw Error(ErrorCode::OutOfRange, "initial guess must be positive");
  if (max_iterations < 1) throw Error(ErrorCode::OutOfRange, "max_iterations must be >= 1");
  if (!(derivative_step > 0.0)) {
    throw Error(ErrorCode::OutOfRange, "derivative step must be positive");
  }
}

namespace detail {

void throw_non_convergence(const IterationTrace& trace, int max_iterations) {
  std::ostringstream msg;
  msg << "no fixed point after " << max_iterations << " iterations (last iterate "
      << trace.iterates.back() << ", last step " << trace.final_distance << ")";
  throw Error(ErrorCode::NonConvergence, msg.str());
}

void throw_non_finite_iterate(double previous) {
  std::ostringstream msg;
  msg << "updater produced a non-finite iterate from c = " << previous;
  throw Error(ErrorCode::NumericalDomain, msg.str());
}

}  // namespace detail
}  // namespace kuiper
