#include "rqinv/r2q2.hpp"

#include <cassert>
#include <cmath>
#include <map>

#include "rqinv/kernels.hpp"
#include "rqinv/quadrature.hpp"

namespace rqinv {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

void check_instance(double lambda, double tau) {
  if (!(lambda > 0.0) || !std::isfinite(lambda) || !(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("r2q2 solver requires lambda > 0 and tau > 0");
  }
  if (lambda * tau * kSqrt2 > 700.0) {
    throw std::invalid_argument("lead-time demand too large: e^{sqrt(2) lambda tau} overflows");
  }
}

}  // namespace

double ZSolution::operator()(double t) const {
  const double a = kSqrt2 * lambda;
  return coeff_const + coeff_linear * t + coeff_pos * std::exp(a * t) +
         coeff_neg * std::exp(-a * t);
}

double ZSolution::second_derivative(double t) const {
  const double a = kSqrt2 * lambda;
  return a * a * (coeff_pos * std::exp(a * t) + coeff_neg * std::exp(-a * t));
}

double ZSolution::fourth_derivative(double t) const {
  const double a = kSqrt2 * lambda;
  return a * a * a * a * (coeff_pos * std::exp(a * t) + coeff_neg * std::exp(-a * t));
}

ZSolution z_constants(double lambda, double tau) {
  check_instance(lambda, tau);
  const double grown = std::exp(lambda * tau * kSqrt2);
  const double denom = grown - 3.0 + 2.0 * kSqrt2;
  // e^x > 1 > 3 - 2 sqrt(2) for x > 0, so the denominator cannot vanish.
  assert(denom > 0.0);

  ZSolution sol;
  sol.lambda = lambda;
  sol.tau = tau;
  sol.coeff_const = 0.5 * lambda * kSqrt2 * (-2.0 * kSqrt2 + 3.0 + grown) / denom;
  sol.coeff_linear = 0.0;
  sol.coeff_pos = -0.5 * lambda * kSqrt2 / denom;
  sol.coeff_neg = -0.5 * (-4.0 + 3.0 * kSqrt2) * lambda * grown / denom;
  return sol;
}

double integral_equation_residual(const ZSolution& sol, std::span<const double> t_grid) {
  const double lambda = sol.lambda;
  const double tau = sol.tau;
  QuadratureOptions quad;
  quad.abs_tol = 1e-10;

  double residual = 0.0;
  for (double t : t_grid) {
    if (t < 0.0 || t > tau) {
      throw std::invalid_argument("residual grid points must lie in [0, tau]");
    }
    const double horizon = tau - t;
    const double convolution = integrate(
        [&](double x) {
          const double u = horizon - x;
          return lambda * lambda * u * std::exp(-lambda * u) * sol(x);
        },
        0.0, horizon, quad);
    const double source = lambda * lambda * horizon * std::exp(-lambda * horizon);
    residual = std::max(residual, std::abs(sol(t) - (convolution + source)));
  }
  return residual;
}

double ode_residual(const ZSolution& sol, std::span<const double> t_grid) {
  double residual = 0.0;
  for (double t : t_grid) {
    const double value =
        -2.0 * sol.lambda * sol.lambda * sol.second_derivative(t) + sol.fourth_derivative(t);
    residual = std::max(residual, std::abs(value));
  }
  return residual;
}

LevelDistribution solve_r2q2(double lambda, double tau) {
  check_instance(lambda, tau);
  const Policy policy{2, 2, tau};
  std::map<int, double> raw;
  raw[0] = 0.0;
  for (int level = 1; level <= 4; ++level) raw[level] = lambda;
  const SystemSpec spec = validate_profile(policy, raw);
  const RateProfile& profile = spec.profile;

  const ZSolution sol = z_constants(lambda, tau);
  QuadratureOptions quad;
  quad.abs_tol = 1e-9;

  // Arrival masses of the no-pending states: an order lands while the level
  // sits at 2 (no demand meanwhile -> level 4) or has dropped once -> level 3.
  // The one pending-order state is either the placement atom (times out at
  // tau, mass 1 by normalization) or an arrival state with density z(tau - t).
  const auto y2 = [&](double t) { return sol(tau - t); };
  const double ybar4 =
      integrate([&](double x) { return decrease_probability(profile, 2, 0, x) * y2(x); }, 0.0,
                tau, quad) +
      decrease_probability(profile, 2, 0, tau);
  const double ybar3 =
      integrate([&](double x) { return decrease_probability(profile, 2, 1, x) * y2(x); }, 0.0,
                tau, quad) +
      decrease_probability(profile, 2, 1, tau);

  std::vector<double> weights(5, 0.0);
  weights[4] = ybar4 / profile.rate(4);
  weights[3] = (ybar3 + ybar4) / profile.rate(3);
  // Levels 1 and 2 accrue time only while one order is pending.
  weights[2] =
      integrate([&](double t) { return expected_level_time(profile, 2, 2, t) * y2(t); }, 0.0,
                tau, quad) +
      expected_level_time(profile, 2, 2, tau);
  weights[1] =
      integrate([&](double t) { return expected_level_time(profile, 2, 1, t) * y2(t); }, 0.0,
                tau, quad) +
      expected_level_time(profile, 2, 1, tau);
  // Level 0 is pinned while both orders are pending (earliest due at t).
  weights[0] = integrate([&](double t) { return expected_level_time(profile, 0, 0, t) * sol(t); },
                         0.0, tau, quad);

  return LevelDistribution::normalized(0, std::move(weights));
}

}  // namespace rqinv
