#include "rqinv/q1.hpp"

#include <algorithm>
#include <cmath>

#include "rqinv/quadrature.hpp"

namespace rqinv {

namespace {

void require_q1(const SystemSpec& spec) {
  if (spec.policy.order_quantity != 1) {
    throw ValidationError(ValidationError::Code::not_q1,
                          "this solver handles q = 1 only, got q = " +
                              std::to_string(spec.policy.order_quantity));
  }
}

}  // namespace

EmbeddedConstantsQ1 embedded_solution_q1(const SystemSpec& spec) {
  require_q1(spec);
  const int r = spec.policy.reorder_point;
  const int floor = spec.profile.floor_level();

  EmbeddedConstantsQ1 constants;
  constants.scale = 1.0;

  // yhat(l) = C / prod_{i=floor+1}^{l} rate_i, with the empty product at the
  // floor; y(l) is the same product stopped one level lower.
  double inv_prod = 1.0;
  constants.yhat[floor] = inv_prod;
  for (int level = floor + 1; level <= r; ++level) {
    constants.y[level] = inv_prod;
    inv_prod /= spec.profile.rate(level);
    constants.yhat[level] = inv_prod;
  }
  constants.ybar_top = inv_prod;
  return constants;
}

WeightTable weights_q1(const SystemSpec& spec) {
  require_q1(spec);
  const int r = spec.policy.reorder_point;
  const int floor = spec.profile.floor_level();
  const double tau = spec.policy.lead_time;
  const int n0 = spec.max_outstanding;

  WeightTable table;
  table.floor_level = floor;
  table.weights.assign(static_cast<std::size_t>(r + 1 - floor + 1), 0.0);

  const auto set = [&](int level, double w) {
    table.weights[static_cast<std::size_t>(level - floor)] = w;
  };

  // w(floor) = C tau^N0 / N0!; climbing a level divides by tau and
  // multiplies by the factorial step and the level's rate product term.
  double log_fact = std::lgamma(n0 + 1.0);
  set(floor, std::exp(n0 * std::log(tau) - log_fact));

  double inv_prod = 1.0;  // 1 / prod_{i=floor+1}^{l} rate_i
  for (int level = floor + 1; level <= r; ++level) {
    inv_prod /= spec.profile.rate(level);
    const int k = r - level + 1;  // tau exponent
    set(level, std::exp(k * std::log(tau) - std::lgamma(k + 1.0)) * inv_prod);
  }
  set(r + 1, inv_prod / spec.profile.rate(r + 1));
  return table;
}

LevelDistribution solve_q1(const SystemSpec& spec) {
  require_q1(spec);
  const int r = spec.policy.reorder_point;
  const int floor = spec.profile.floor_level();
  const double tau = spec.policy.lead_time;

  // term(l) = prod_{i=l+1}^{r+1} (tau rate_i) / (r-l+1)!, built downward from
  // term(r+1) = 1 so constant-rate cases reproduce Poisson terms exactly.
  const int count = r + 1 - floor + 1;
  std::vector<double> terms(static_cast<std::size_t>(count), 0.0);
  double term = 1.0;
  terms[static_cast<std::size_t>(count - 1)] = term;
  for (int level = r; level >= floor; --level) {
    term *= tau * spec.profile.rate(level + 1) / static_cast<double>(r - level + 1);
    terms[static_cast<std::size_t>(level - floor)] = term;
  }
  return LevelDistribution::normalized(floor, std::move(terms));
}

double equilibrium_residual_q1(const SystemSpec& spec, const EmbeddedConstantsQ1& constants,
                               const std::vector<std::vector<double>>& sample_times) {
  require_q1(spec);
  const int r = spec.policy.reorder_point;
  const double tau = spec.policy.lead_time;
  const int n0 = spec.max_outstanding;

  const auto yhat = [&](int level) { return constants.yhat.at(level); };
  const auto y = [&](int level) { return constants.y.at(level); };

  QuadratureOptions quad;
  quad.abs_tol = 1e-10;

  double residual = 0.0;
  const auto track = [&](double lhs, double rhs) {
    residual = std::max(residual, std::abs(lhs - rhs));
  };

  // Time-independent balance at the top of the cycle.
  {
    const double rate_r = spec.profile.rate(r);
    double rhs = std::exp(-rate_r * tau) * yhat(r);
    if (n0 >= 2) {
      rhs += y(r) * integrate([&](double x) { return std::exp(-rate_r * x); }, 0.0, tau, quad);
    }
    track(constants.ybar_top, rhs);              // arrivals into level r+1
    track(yhat(r), constants.ybar_top);          // the placement state below it
  }

  for (const auto& times : sample_times) {
    if (times.size() != static_cast<std::size_t>(n0)) {
      throw std::invalid_argument("each sample vector must carry N_0 pending times");
    }
    if (!std::is_sorted(times.begin(), times.end()) || times.front() < 0.0 ||
        times.back() > tau) {
      throw std::invalid_argument("pending times must be sorted within [0, tau]");
    }
    if (n0 < 2) continue;  // only the two time-free equations exist

    const double t_last = times.back();                                   // t_{N_0}
    const double t_prev = times[static_cast<std::size_t>(n0) - 2];        // t_{N_0 - 1}

    // Arrival equations: level r-k+1 entered when the earliest of k+1
    // pending orders lands with no demand at level r-k meanwhile.
    for (int k = 1; k <= n0 - 1; ++k) {
      const double rate_below = spec.profile.rate(r - k);
      const double horizon = tau - t_last;
      double rhs = std::exp(-rate_below * horizon) * yhat(r - k);
      if (k <= n0 - 2) {
        rhs += y(r - k) *
               integrate([&](double x) { return std::exp(-rate_below * x); }, 0.0, horizon, quad);
      }
      track(y(r - k + 1), rhs);
    }

    // Placement equations: level r-k+1 entered when the level one above it
    // sees a demand before the next pending arrival.
    for (int k = 2; k <= n0; ++k) {
      const int above = r - k + 2;
      const double rate_above = spec.profile.rate(above);
      const double horizon = tau - t_prev;
      double rhs = rate_above * std::exp(-rate_above * horizon) * yhat(above);
      rhs += y(above) * integrate([&](double x) { return rate_above * std::exp(-rate_above * x); },
                                  0.0, horizon, quad);
      track(yhat(r - k + 1), rhs);
    }
  }
  return residual;
}

}  // namespace rqinv
