#pragma once

#include <complex>
#include <functional>

#include "rqinv/errors.hpp"

namespace rqinv {

struct InversionOptions {
  int terms = 35;        // partial sums of the Bromwich series before averaging
  int euler_order = 12;  // binomial (Euler) averaging order
};

/// Numerical inversion of a Laplace transform at t > 0 via the Euler-summed
/// Bromwich series (Abate-Whitt). The transform must be analytic to the right
/// of the imaginary axis; poles on the non-positive real axis are fine.
///
/// Returns F(t) with absolute error at or below target_accuracy for smooth F.
/// Throws NumericalError(accuracy_not_reached) when the internal estimate
/// (difference of consecutive Euler averages plus a round-off floor) exceeds
/// the target; the estimate is carried in the exception's residual().
double invert_laplace(const std::function<std::complex<double>(std::complex<double>)>& transform,
                      double t, double target_accuracy,
                      const InversionOptions& options = {});

}  // namespace rqinv
