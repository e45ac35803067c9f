#include "rqinv/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

namespace rqinv {

double invert_laplace(const std::function<std::complex<double>(std::complex<double>)>& transform,
                      double t, double target_accuracy, const InversionOptions& options) {
  if (!(t > 0.0)) {
    throw std::invalid_argument("invert_laplace requires t > 0");
  }
  if (!(target_accuracy > 0.0)) {
    throw std::invalid_argument("invert_laplace requires a positive accuracy target");
  }
  const int m = std::max(options.euler_order, 4);
  const int n = std::max(options.terms, m + 3);

  // Discretization (aliasing) error of the trapezoidal Bromwich sum is
  // ~ e^-A for transforms of bounded functions; push it below the target,
  //but cap A so the e^{A/2} round-off amplification stays near 1e-12.
  const double A = std::clamp(-std::log(0.25 * target_accuracy), 18.4, 28.0);

  const double scale = std::exp(0.5 * A) / t;
  const int total = n + m;

  std::vector<double> partial(static_cast<std::size_t>(total) + 1);
  double max_term = 0.0;

  double s0 = 0.5 * scale * transform(std::complex<double>(A / (2.0 * t), 0.0)).real();
  partial[0] = s0;
  max_term = std::abs(s0);
  double sign = -1.0;
  for (int k = 1; k <= total; ++k) {
    const std::complex<double> s(A / (2.0 * t), std::numbers::pi * k / t);
    const double term = sign * scale * transform(s).real();
    partial[static_cast<std::size_t>(k)] = partial[static_cast<std::size_t>(k) - 1] + term;
    max_term = std::max(max_term, std::abs(term));
    sign = -sign;
  }

  // Euler (binomial) averaging of the last m+1 partial sums, computed at two
  // consecutive offsets; their difference estimates the truncation error.
  const auto euler = [&](int base) {
    double coeff = std::pow(0.5, m);  // C(m,0) / 2^m
    double acc = 0.0;
    for (int j = 0; j <= m; ++j) {
      acc += coeff * partial[static_cast<std::size_t>(base + j)];
      coeff *= static_cast<double>(m - j) / static_cast<double>(j + 1);
    }
    return acc;
  };

  const double value = euler(n);
  const double previous = euler(n - 1);
  const double roundoff = static_cast<double>(total) *
                          std::numeric_limits<double>::epsilon() * max_term;
  const double estimate = std::abs(value - previous) + roundoff;

  if (estimate > target_accuracy) {
    std::ostringstream os;
    os << "laplace inversion error estimate " << estimate << " exceeds target "
       << target_accuracy << " at t=" << t;
    throw NumericalError(NumericalError::Code::accuracy_not_reached, os.str(), estimate);
  }
  return value;
}

}  // namespace rqinv
