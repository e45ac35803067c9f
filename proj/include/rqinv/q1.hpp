#pragma once

#include <map>
#include <vector>

#include "rqinv/model.hpp"

namespace rqinv {

/// Product-form equilibrium constants of the embedded order-placement /
/// order-arrival chain for q = 1, up to the common scale C. They do not
/// depend on the residual times of pending orders.
struct EmbeddedConstantsQ1 {
  double scale = 1.0;              // C
  double ybar_top = 1.0;           // mass of the no-pending state at level r+1
  std::map<int, double> yhat;      // placement states, levels [floor, r]
  std::map<int, double> y;         // arrival states, levels [floor+1, r]
};

/// Expected time per embedded state spent at each level, support [floor, r+1].
struct WeightTable {
  int floor_level = 0;
  std::vector<double> weights;

  double at(int level) const {
    return weights.at(static_cast<std::size_t>(level - floor_level));
  }
};

/// Constants with C = 1. Requires q = 1 (throws ValidationError(not_q1)).
EmbeddedConstantsQ1 embedded_solution_q1(const SystemSpec& spec);

/// Unnormalized occupancy weights w(l) for q = 1, C = 1.
WeightTable weights_q1(const SystemSpec& spec);

/// Closed-form equilibrium distribution for q = 1:
///   a(l) proportional to prod_{i=l+1}^{r+1} (tau * rate_i) / (r - l + 1)!
/// over levels [floor, r+1].
LevelDistribution solve_q1(const SystemSpec& spec);

/// Checks that the product-form constants satisfy the embedded equilibrium
/// equations, evaluating every right-hand side by numerical quadrature at
/// each sampled vector of pending times (each sorted ascending in [0, tau],
/// length N_0). Returns the maximum absolute residual.
double equilibrium_residual_q1(const SystemSpec& spec, const EmbeddedConstantsQ1& constants,
                               const std::vector<std::vector<double>>& sample_times);

}  // namespace rqinv
