#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rqinv/model.hpp"
#include "rqinv/rng.hpp"
#include "rqinv/transship.hpp"

namespace rqinv {

/// Simulator state: inventory level, absolute arrival times of pending
/// orders (sorted ascending, at most N_0 of them), and the clock.
struct SimState {
  int level = 0;
  std::vector<double> pending;
  double clock = 0.0;
};

enum class EventKind { demand, arrival };

struct StepResult {
  SimState next;
  double elapsed = 0.0;
  EventKind kind = EventKind::demand;
  bool order_placed = false;
};

struct SimConfig {
  std::uint64_t seed = 1;
  /// Events discarded before measurement; defaults to 10% of measured_events.
  std::optional<long> warmup_events;
  long measured_events = 1'000'000;
  int batches = 20;  // batch-means groups for the 99% confidence intervals
};

struct SimResult {
  LevelDistribution empirical;
  std::vector<double> half_widths;  // 99% batch-means CI per level
  long demand_events = 0;
  long lost_sales = 0;
  long orders_placed = 0;
};

/// One transition: the earliest of the next demand (exponential at the
/// current level's rate) and the earliest pending arrival; ties go to the
/// arrival. A demand that drops the net inventory position onto the reorder
/// point schedules a new order at clock + lead time.
StepResult step(const SystemSpec& spec, const SimState& state, SplitMix64& rng);

/// Time-weighted empirical level distribution after warmup, with batch-means
/// confidence half-widths. Bitwise reproducible for a fixed seed and config.
SimResult simulate(const SystemSpec& spec, const SimConfig& config);

struct TransshipSimResult {
  SimResult store_a;
  SimResult store_b;
  BetaPair beta_hat;        // empirical zero-stock time fractions
  long transshipments = 0;  // redirected demands actually served
};

/// Coupled two-store simulation: Poisson customer streams, instantaneous
/// redirection to the other store when it is at or above its cutoff,
/// otherwise a lost sale; every effective sale triggers that store's order.
TransshipSimResult simulate_transshipment(const TransshipScenario& scenario,
                                          const SimConfig& config);

}  // namespace rqinv
