#pragma once

#include <utility>

#include "rqinv/model.hpp"
#include "rqinv/q1.hpp"

namespace rqinv {

/// One store under a buy-as-sold (r, 1) policy. Outgoing transshipments are
/// allowed while the store's level is at or above transship_cutoff.
struct StoreSpec {
  int reorder_point = 0;     // r_m >= 0
  int transship_cutoff = 1;  // c_m in [1, r_m + 1]
  double demand_rate = 1.0;  // gamma_m > 0, Poisson customer rate
};

struct TransshipScenario {
  StoreSpec store_a;
  StoreSpec store_b;
  double lead_time = 1.0;  // shared tau > 0
};

/// Fraction of time each store has no on-hand inventory.
struct BetaPair {
  double a = 0.0;
  double b = 0.0;
};

enum class Store { a, b };

void validate_scenario(const TransshipScenario& scenario);

/// Effective demand-rate profile seen by one store when the other store is
/// stocked out a fraction beta_other of the time: the other store's customers
/// overflow here at levels >= the cutoff.
RateProfile effective_profile(const TransshipScenario& scenario, Store which,
                              double beta_other);

SystemSpec store_system(const TransshipScenario& scenario, Store which, double beta_other);

/// One step of the coupled stockout-fraction map: each store's a(0) under the
/// effective profile built from the other store's current beta.
BetaPair beta_update(const TransshipScenario& scenario, const BetaPair& current);

struct FixedPointReport {
  BetaPair beta;
  double residual = 0.0;  // max-norm of beta_update(beta) - beta
  int iterations = 0;
  /// Whether starting from (0,0) and (1,1) landed on the same point; the
  /// map's uniqueness is not established, so disagreement is reported.
  bool multistart_agreed = true;
  BetaPair beta_from_high;
};

/// Damped successive substitution (alpha = 0.5) from beta = (0,0). Throws
/// NumericalError(no_convergence) with the last residual when the iteration
/// budget is exhausted.
BetaPair solve_fixed_point(const TransshipScenario& scenario, double tolerance = 1e-10,
                           int max_iterations = 10000);

FixedPointReport solve_fixed_point_report(const TransshipScenario& scenario,
                                          double tolerance = 1e-10, int max_iterations = 10000);

/// Per-store equilibrium distributions at a (near-)fixed point.
std::pair<LevelDistribution, LevelDistribution> store_distributions(
    const TransshipScenario& scenario, const BetaPair& beta);

}  // namespace rqinv
