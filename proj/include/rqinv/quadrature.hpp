#pragma once

#include <cmath>
#include <sstream>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rqinv/errors.hpp"

namespace rqinv {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  int max_depth = 12;
};

/// Adaptive Gauss-Kronrod integration of f over [a, b]. Throws
/// NumericalError(quadrature_failure) when the error estimate exceeds the
/// absolute tolerance (a relative escape hatch covers large-magnitude
/// integrals where the absolute target is below round-off).
template <class F>
double integrate(F&& f, double a, double b, const QuadratureOptions& options = {}) {
  if (a == b) return 0.0;
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      std::forward<F>(f), a, b, static_cast<unsigned>(options.max_depth), 1e-13, &error, &l1);
  if (!(error <= options.abs_tol) && !(error <= 1e-13 * l1)) {
    std::ostringstream os;
    os << "quadrature error estimate " << error << " exceeds tolerance "
       << options.abs_tol << " on [" << a << ", " << b << "]";
    throw NumericalError(NumericalError::Code::quadrature_failure, os.str(), error);
  }
  return value;
}

}  // namespace rqinv
