#include "rqinv/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace rqinv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double t_quantile_99(int batches) {
  boost::math::students_t dist(batches - 1);
  return boost::math::quantile(dist, 0.995);
}

void check_config(const SimConfig& config) {
  if (config.batches < 2) {
    throw ValidationError(ValidationError::Code::bad_config, "batches must be >= 2");
  }
  if (config.measured_events < config.batches) {
    throw ValidationError(ValidationError::Code::bad_config,
                          "measured_events must be >= batches");
  }
  if (config.warmup_events && *config.warmup_events < 0) {
    throw ValidationError(ValidationError::Code::bad_config,
                          "warmup_events must be non-negative");
  }
}

long warmup_of(const SimConfig& config) {
  return config.warmup_events ? *config.warmup_events : config.measured_events / 10;
}

// Accumulates time-at-level per batch and turns batch fractions into
// 99% batch-means confidence half-widths.
class OccupancyTally {
 public:
  OccupancyTally(int floor_level, int levels, int batches)
      : floor_(floor_level),
        batches_(batches),
        time_at_(static_cast<std::size_t>(batches) * levels, 0.0),
        duration_(static_cast<std::size_t>(batches), 0.0),
        levels_(levels) {}

  void add(int batch, int level, double elapsed) {
    time_at_[static_cast<std::size_t>(batch) * levels_ +
             static_cast<std::size_t>(level - floor_)] += elapsed;
    duration_[static_cast<std::size_t>(batch)] += elapsed;
  }

  SimResult finish(long demand_events, long lost_sales, long orders_placed) const {
    std::vector<double> totals(static_cast<std::size_t>(levels_), 0.0);
    double total_time = 0.0;
    for (int b = 0; b < batches_; ++b) {
      for (int l = 0; l < levels_; ++l) {
        totals[static_cast<std::size_t>(l)] +=
            time_at_[static_cast<std::size_t>(b) * levels_ + static_cast<std::size_t>(l)];
      }
      total_time += duration_[static_cast<std::size_t>(b)];
    }
    std::vector<double> probs(totals);
    for (double& p : probs) p /= total_time;

    const double tq = t_quantile_99(batches_);
    std::vector<double> half_widths(static_cast<std::size_t>(levels_), 0.0);
    for (int l = 0; l < levels_; ++l) {
      double mean = 0.0;
      for (int b = 0; b < batches_; ++b) {
        mean += fraction(b, l);
      }
      mean /= batches_;
      double var = 0.0;
      for (int b = 0; b < batches_; ++b) {
        const double diff = fraction(b, l) - mean;
        var += diff * diff;
      }
      var /= (batches_ - 1);
      half_widths[static_cast<std::size_t>(l)] = tq * std::sqrt(var / batches_);
    }
    return SimResult{LevelDistribution::normalized(floor_, std::move(probs)),
                     std::move(half_widths), demand_events, lost_sales, orders_placed};
  }

 private:
  double fraction(int batch, int level_index) const {
    const double d = duration_[static_cast<std::size_t>(batch)];
    if (d <= 0.0) return 0.0;
    return time_at_[static_cast<std::size_t>(batch) * levels_ +
                    static_cast<std::size_t>(level_index)] /
           d;
  }

  int floor_;
  int batches_;
  std::vector<double> time_at_;
  std::vector<double> duration_;
  int levels_;
};

}  // namespace

StepResult step(const SystemSpec& spec, const SimState& state, SplitMix64& rng) {
  const double rate = spec.profile.rate(state.level);
  const double demand_at = rate > 0.0 ? state.clock + rng.exponential(rate) : kInf;
  const double arrival_at = state.pending.empty() ? kInf : state.pending.front();
  if (demand_at == kInf && arrival_at == kInf) {
    throw NumericalError(NumericalError::Code::stalled,
                         "no demand possible and no pending orders; state is absorbing");
  }

  StepResult result;
  result.next = state;
  if (arrival_at <= demand_at) {
    result.kind = EventKind::arrival;
    result.elapsed = arrival_at - state.clock;
    result.next.clock = arrival_at;
    result.next.level += spec.policy.order_quantity;
    result.next.pending.erase(result.next.pending.begin());
  } else {
    result.kind = EventKind::demand;
    result.elapsed = demand_at - state.clock;
    result.next.clock = demand_at;
    result.next.level -= 1;
    const int position =
        result.next.level +
        spec.policy.order_quantity * static_cast<int>(result.next.pending.size());
    if (position == spec.policy.reorder_point) {
      result.next.pending.push_back(demand_at + spec.policy.lead_time);
      result.order_placed = true;
    }
  }
  return result;
}

SimResult simulate(const SystemSpec& spec, const SimConfig& config) {
  check_config(config);
  const int floor = spec.profile.floor_level();
  const int top = spec.profile.level_max();

  SimState state;
  state.level = top;
  state.clock = 0.0;

  SplitMix64 rng = derive_stream(config.seed, 0);
  const long warmup = warmup_of(config);
  for (long i = 0; i < warmup; ++i) {
    state = step(spec, state, rng).next;
  }

  OccupancyTally tally(floor, top - floor + 1, config.batches);
  long demand_events = 0;
  long orders_placed = 0;
  const long measured = config.measured_events;
  for (long i = 0; i < measured; ++i) {
    const int batch = static_cast<int>((i * config.batches) / measured);
    const int level_before = state.level;
    StepResult result = step(spec, state, rng);
    tally.add(batch, level_before, result.elapsed);
    if (result.kind == EventKind::demand) ++demand_events;
    if (result.order_placed) ++orders_placed;
    state = std::move(result.next);

    if (state.level < floor || state.level > top ||
        static_cast<int>(state.pending.size()) > spec.max_outstanding) {
      throw std::logic_error("simulator invariant violated: level or pending out of range");
    }
  }
  return tally.finish(demand_events, /*lost_sales=*/0, orders_placed);
}

TransshipSimResult simulate_transshipment(const TransshipScenario& scenario,
                                          const SimConfig& config) {
  validate_scenario(scenario);
  check_config(config);
  const StoreSpec stores[2] = {scenario.store_a, scenario.store_b};
  const double tau = scenario.lead_time;

  int level[2] = {stores[0].reorder_point + 1, stores[1].reorder_point + 1};
  std::vector<double> pending[2];
  double clock = 0.0;

  long customers[2] = {0, 0};
  long lost[2] = {0, 0};
  long orders[2] = {0, 0};
  long transshipments = 0;

  SplitMix64 rng = derive_stream(config.seed, 1);

  // A sale at store m always puts the position back to r_m + 1, so every
  // effective demand triggers an order (buy-as-sold).
  const auto sell = [&](int m) {
    level[m] -= 1;
    pending[m].push_back(clock + tau);
    orders[m] += 1;
  };

  // Sets exactly one of customer_store / arrive_store (the other to -1) and
  // returns the elapsed time. Arrivals win ties (measure zero anyway).
  const auto advance = [&](int* customer_store, int* arrive_store) {
    const double next_a = clock + rng.exponential(stores[0].demand_rate);
    const double next_b = clock + rng.exponential(stores[1].demand_rate);
    double best = kInf;
    int kind = -1;
    for (int m = 0; m < 2; ++m) {
      if (!pending[m].empty() && pending[m].front() < best) {
        best = pending[m].front();
        kind = m;
      }
    }
    if (next_a < best) {
      best = next_a;
      kind = 2;
    }
    if (next_b < best) {
      best = next_b;
      kind = 3;
    }
    const double elapsed = best - clock;
    clock = best;
    *customer_store = kind >= 2 ? kind - 2 : -1;
    *arrive_store = kind <= 1 ? kind : -1;
    return elapsed;
  };

  const auto handle = [&](int customer_store, int arrive_store) {
    if (arrive_store >= 0) {
      pending[arrive_store].erase(pending[arrive_store].begin());
      level[arrive_store] += 1;
      return;
    }
    const int m = customer_store;
    const int n = 1 - m;
    customers[m] += 1;
    if (level[m] >= 1) {
      sell(m);
    } else if (level[n] >= stores[n].transship_cutoff) {
      sell(n);
      transshipments += 1;
    } else {
      lost[m] += 1;
    }
  };

  const auto check_invariants = [&] {
    for (int m = 0; m < 2; ++m) {
      if (level[m] < 0 || level[m] > stores[m].reorder_point + 1 ||
          static_cast<int>(pending[m].size()) > stores[m].reorder_point + 1) {
        throw std::logic_error("transshipment simulator invariant violated");
      }
    }
  };

  const long warmup = warmup_of(config);
  for (long i = 0; i < warmup; ++i) {
    int customer_store, arrive_store;
    advance(&customer_store, &arrive_store);
    handle(customer_store, arrive_store);
    check_invariants();
  }

  OccupancyTally tally_a(0, stores[0].reorder_point + 2, config.batches);
  OccupancyTally tally_b(0, stores[1].reorder_point + 2, config.batches);
  const long measured = config.measured_events;
  for (long i = 0; i < measured; ++i) {
    const int batch = static_cast<int>((i * config.batches) / measured);
    const int before_a = level[0];
    const int before_b = level[1];
    int customer_store, arrive_store;
    const double elapsed = advance(&customer_store, &arrive_store);
    tally_a.add(batch, before_a, elapsed);
    tally_b.add(batch, before_b, elapsed);
    handle(customer_store, arrive_store);
    check_invariants();
  }

  TransshipSimResult result{tally_a.finish(customers[0], lost[0], orders[0]),
                            tally_b.finish(customers[1], lost[1], orders[1]),
                            BetaPair{},
                            transshipments};
  result.beta_hat.a = result.store_a.empirical.at(0);
  result.beta_hat.b = result.store_b.empirical.at(0);
  return result;
}

}  // namespace rqinv
