#pragma once

#include <map>
#include <vector>

#include "rqinv/errors.hpp"

namespace rqinv {

/// Continuous-review (r, q) replenishment policy with constant lead time.
/// An order for order_quantity units is placed whenever the net inventory
/// position drops from reorder_point + 1 to reorder_point.
struct Policy {
  int reorder_point = 0;     // r
  int order_quantity = 1;    // q >= 1
  double lead_time = 1.0;    // tau > 0
};

/// Level-dependent demand rates on a contiguous integer range of inventory
/// levels. The bottom level is absorbing (rate exactly 0); every level above
/// it carries a strictly positive, finite rate. Immutable after construction.
class RateProfile {
 public:
  /// rates[i] is the rate at level floor_level + i; rates[0] must be 0 and
  /// the rest strictly positive.
  RateProfile(int floor_level, std::vector<double> rates);

  int floor_level() const { return floor_level_; }
  int level_max() const { return floor_level_ + static_cast<int>(rates_.size()) - 1; }
  bool contains(int level) const {
    return level >= floor_level_ && level <= level_max();
  }
  /// Throws LevelOutOfRange outside [floor_level, level_max].
  double rate(int level) const;

  const std::vector<double>& rates() const { return rates_; }

 private:
  int floor_level_;
  std::vector<double> rates_;
};

/// A policy bound to a validated rate profile, with the derived bound on
/// simultaneously outstanding orders.
struct SystemSpec {
  Policy policy;
  RateProfile profile;
  int max_outstanding;  // N_0 = floor((r - floor) / q + 1)
};

/// Largest number of orders that can be outstanding at once. Requires
/// floor_level <= reorder_point (enforced by validate_profile upstream).
int max_outstanding_orders(const Policy& policy, int floor_level);

/// Validates a raw level -> rate map against a policy and assembles a
/// SystemSpec. The floor is detected as the top of the initial run of zero
/// rates; zero rates above it are rejected, as are missing levels in
/// [floor, r+q] and surplus levels above r+q.
SystemSpec validate_profile(const Policy& policy, const std::map<int, double>& raw_rates);

/// Long-run fraction of time spent at each inventory level, over a
/// contiguous support. Entries are non-negative and sum to 1 (within 1e-12,
/// checked at construction).
class LevelDistribution {
 public:
  LevelDistribution(int floor_level, std::vector<double> probabilities);

  /// Builds a distribution from non-negative weights by normalizing.
  /// Tiny negative weights (quadrature noise above -1e-12) are clamped to 0.
  static LevelDistribution normalized(int floor_level, std::vector<double> weights);

  int floor_level() const { return floor_level_; }
  int level_max() const { return floor_level_ + static_cast<int>(probs_.size()) - 1; }
  /// Probability at a level; 0 outside the support.
  double at(int level) const;
  const std::vector<double>& probabilities() const { return probs_; }

 private:
  int floor_level_;
  std::vector<double> probs_;
};

/// Total variation distance, half the L1 distance over the union of supports.
double total_variation(const LevelDistribution& a, const LevelDistribution& b);

}  // namespace rqinv
