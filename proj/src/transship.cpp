#include "rqinv/transship.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rqinv {

namespace {

const StoreSpec& pick_store(const TransshipScenario& scenario, Store which) {
  return which == Store::a ? scenario.store_a : scenario.store_b;
}

const StoreSpec& other_store(const TransshipScenario& scenario, Store which) {
  return which == Store::a ? scenario.store_b : scenario.store_a;
}

void check_store(const StoreSpec& store, const char* name) {
  if (store.reorder_point < 0) {
    throw ValidationError(ValidationError::Code::bad_policy,
                          std::string(name) + ": reorder point must be >= 0");
  }
  if (store.transship_cutoff < 1 || store.transship_cutoff > store.reorder_point + 1) {
    throw ValidationError(ValidationError::Code::bad_policy,
                          std::string(name) + ": cutoff must lie in [1, r+1]");
  }
  if (!(store.demand_rate > 0.0) || !std::isfinite(store.demand_rate)) {
    throw ValidationError(ValidationError::Code::bad_policy,
                          std::string(name) + ": demand rate must be positive and finite");
  }
}

}  // namespace

void validate_scenario(const TransshipScenario& scenario) {
  check_store(scenario.store_a, "store a");
  check_store(scenario.store_b, "store b");
  if (!(scenario.lead_time > 0.0) || !std::isfinite(scenario.lead_time)) {
    throw ValidationError(ValidationError::Code::bad_policy,
                          "lead time must be positive and finite");
  }
}

RateProfile effective_profile(const TransshipScenario& scenario, Store which,
                              double beta_other) {
  validate_scenario(scenario);
  if (!(beta_other >= 0.0 && beta_other <= 1.0)) {
    throw std::invalid_argument("beta_other must lie in [0, 1]");
  }
  const StoreSpec& mine = pick_store(scenario, which);
  const StoreSpec& other = other_store(scenario, which);
  const double overflow = beta_other * other.demand_rate;

  std::vector<double> rates(static_cast<std::size_t>(mine.reorder_point + 2), 0.0);
  for (int level = 1; level <= mine.reorder_point + 1; ++level) {
    rates[static_cast<std::size_t>(level)] =
        level >= mine.transship_cutoff ? mine.demand_rate + overflow : mine.demand_rate;
  }
  return RateProfile(0, std::move(rates));
}

SystemSpec store_system(const TransshipScenario& scenario, Store which, double beta_other) {
  const StoreSpec& mine = pick_store(scenario, which);
  const Policy policy{mine.reorder_point, 1, scenario.lead_time};
  RateProfile profile = effective_profile(scenario, which, beta_other);
  const int n0 = max_outstanding_orders(policy, 0);
  return SystemSpec{policy, std::move(profile), n0};
}

BetaPair beta_update(const TransshipScenario& scenario, const BetaPair& current) {
  BetaPair next;
  next.a = solve_q1(store_system(scenario, Store::a, current.b)).at(0);
  next.b = solve_q1(store_system(scenario, Store::b, current.a)).at(0);
  return next;
}

FixedPointReport solve_fixed_point_report(const TransshipScenario& scenario, double tolerance,
                                          int max_iterations) {
  validate_scenario(scenario);
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("tolerance must be positive");
  }

  const auto iterate = [&](BetaPair beta) {
    for (int i = 1; i <= max_iterations; ++i) {
      const BetaPair next = beta_update(scenario, beta);
      const double residual =
          std::max(std::abs(next.a - beta.a), std::abs(next.b - beta.b));
      if (residual <= tolerance) {
        return std::tuple<BetaPair, double, int>{next, residual, i};
      }
      beta.a = 0.5 * beta.a + 0.5 * next.a;  // damping guards against oscillation
      beta.b = 0.5 * beta.b + 0.5 * next.b;
    }
    const BetaPair last = beta_update(scenario, beta);
    const double residual = std::max(std::abs(last.a - beta.a), std::abs(last.b - beta.b));
    std::ostringstream os;
    os << "fixed point not reached in " << max_iterations
       << " iterations; last residual " << residual;
    throw NumericalError(NumericalError::Code::no_convergence, os.str(), residual);
  };

  FixedPointReport report;
  const auto [beta_low, residual, iterations] = iterate(BetaPair{0.0, 0.0});
  const auto [beta_high, residual_high, iterations_high] = iterate(BetaPair{1.0, 1.0});
  (void)residual_high;
  report.beta = beta_low;
  report.residual = residual;
  report.iterations = iterations + iterations_high;
  report.beta_from_high = beta_high;
  report.multistart_agreed =
      std::max(std::abs(beta_low.a - beta_high.a), std::abs(beta_low.b - beta_high.b)) <=
      100.0 * tolerance;
  return report;
}

BetaPair solve_fixed_point(const TransshipScenario& scenario, double tolerance,
                           int max_iterations) {
  return solve_fixed_point_report(scenario, tolerance, max_iterations).beta;
}

std::pair<LevelDistribution, LevelDistribution> store_distributions(
    const TransshipScenario& scenario, const BetaPair& beta) {
  return {solve_q1(store_system(scenario, Store::a, beta.b)),
          solve_q1(store_system(scenario, Store::b, beta.a))};
}

}  // namespace rqinv
