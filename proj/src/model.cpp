#include "rqinv/model.hpp"

#include <cmath>
#include <sstream>

namespace rqinv {

namespace {

void check_policy(const Policy& policy) {
  if (policy.order_quantity < 1) {
    throw ValidationError(ValidationError::Code::bad_policy,
                          "order quantity must be >= 1, got " +
                              std::to_string(policy.order_quantity));
  }
  if (!(policy.lead_time > 0.0) || !std::isfinite(policy.lead_time)) {
    throw ValidationError(ValidationError::Code::bad_policy,
                          "lead time must be positive and finite");
  }
}

}  // namespace

RateProfile::RateProfile(int floor_level, std::vector<double> rates)
    : floor_level_(floor_level), rates_(std::move(rates)) {
  if (rates_.empty()) {
    throw ValidationError(ValidationError::Code::incomplete_range,
                          "rate profile must cover at least the floor level");
  }
  for (std::size_t i = 0; i < rates_.size(); ++i) {
    const double r = rates_[i];
    const int level = floor_level_ + static_cast<int>(i);
    if (!std::isfinite(r)) {
      throw ValidationError(ValidationError::Code::negative_rate,
                            "rate at level " + std::to_string(level) + " is not finite");
    }
    if (r < 0.0) {
      throw ValidationError(ValidationError::Code::negative_rate,
                            "rate at level " + std::to_string(level) + " is negative");
    }
  }
  if (rates_[0] != 0.0) {
    throw ValidationError(ValidationError::Code::no_floor,
                          "rate at the floor level " + std::to_string(floor_level_) +
                              " must be exactly 0");
  }
  for (std::size_t i = 1; i < rates_.size(); ++i) {
    if (rates_[i] == 0.0) {
      throw ValidationError(ValidationError::Code::zero_interior_rate,
                            "rate 0 at level " +
                                std::to_string(floor_level_ + static_cast<int>(i)) +
                                " above the floor breaks ergodicity");
    }
  }
}

double RateProfile::rate(int level) const {
  if (!contains(level)) {
    throw ValidationError(ValidationError::Code::level_out_of_range,
                          "level " + std::to_string(level) + " outside profile range [" +
                              std::to_string(floor_level_) + ", " +
                              std::to_string(level_max()) + "]");
  }
  return rates_[static_cast<std::size_t>(level - floor_level_)];
}

int max_outstanding_orders(const Policy& policy, int floor_level) {
  check_policy(policy);
  // floor((r - l_L)/q + 1); the boundary case is attained.
  return (policy.reorder_point - floor_level) / policy.order_quantity + 1;
}

SystemSpec validate_profile(const Policy& policy, const std::map<int, double>& raw_rates) {
  check_policy(policy);
  if (raw_rates.empty()) {
    throw ValidationError(ValidationError::Code::incomplete_range, "empty rate map");
  }

  // Contiguity of the supplied range.
  int prev = raw_rates.begin()->first;
  for (auto it = std::next(raw_rates.begin()); it != raw_rates.end(); ++it) {
    if (it->first != prev + 1) {
      throw ValidationError(ValidationError::Code::incomplete_range,
                            "rates must cover a contiguous level range; gap between " +
                                std::to_string(prev) + " and " + std::to_string(it->first));
    }
    prev = it->first;
  }

  for (const auto& [level, rate] : raw_rates) {
    if (!std::isfinite(rate)) {
      throw ValidationError(ValidationError::Code::negative_rate,
                            "rate at level " + std::to_string(level) + " is not finite");
    }
    if (rate < 0.0) {
      throw ValidationError(ValidationError::Code::negative_rate,
                            "rate at level " + std::to_string(level) + " is negative");
    }
  }

  // The floor is the top of the initial run of zero rates.
  auto it = raw_rates.begin();
  if (it->second != 0.0) {
    throw ValidationError(ValidationError::Code::no_floor,
                          "no absorbing floor: rate at the lowest level " +
                              std::to_string(it->first) + " is nonzero");
  }
  int floor_level = it->first;
  for (++it; it != raw_rates.end() && it->second == 0.0; ++it) {
    floor_level = it->first;
  }
  for (; it != raw_rates.end(); ++it) {
    if (it->second == 0.0) {
      throw ValidationError(ValidationError::Code::zero_interior_rate,
                            "rate 0 at level " + std::to_string(it->first) +
                                " above the floor level " + std::to_string(floor_level));
    }
  }

  const int r = policy.reorder_point;
  const int q = policy.order_quantity;
  const int top = r + q;
  if (floor_level > r) {
    throw ValidationError(ValidationError::Code::floor_above_reorder,
                          "floor level " + std::to_string(floor_level) +
                              " exceeds reorder point " + std::to_string(r) +
                              "; no order is ever triggered");
  }
  const int supplied_max = raw_rates.rbegin()->first;
  if (supplied_max < top) {
    throw ValidationError(ValidationError::Code::incomplete_range,
                          "levels " + std::to_string(supplied_max + 1) + ".." +
                              std::to_string(top) + " missing; profile must cover up to r+q");
  }
  if (supplied_max > top) {
    throw ValidationError(ValidationError::Code::extra_levels,
                          "rates supplied above r+q = " + std::to_string(top) +
                              " are never reachable; remove levels " +
                              std::to_string(top + 1) + ".." + std::to_string(supplied_max));
  }

  std::vector<double> rates;
  rates.reserve(static_cast<std::size_t>(top - floor_level + 1));
  for (int level = floor_level; level <= top; ++level) {
    rates.push_back(raw_rates.at(level));
  }
  RateProfile profile(floor_level, std::move(rates));
  const int n0 = max_outstanding_orders(policy, floor_level);
  return SystemSpec{policy, std::move(profile), n0};
}

LevelDistribution::LevelDistribution(int floor_level, std::vector<double> probabilities)
    : floor_level_(floor_level), probs_(std::move(probabilities)) {
  if (probs_.empty()) {
    throw ValidationError(ValidationError::Code::bad_distribution, "empty distribution");
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw ValidationError(ValidationError::Code::bad_distribution,
                            "distribution entries must be non-negative and finite");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "distribution sums to " << sum << ", not 1";
    throw ValidationError(ValidationError::Code::bad_distribution, os.str());
  }
}

LevelDistribution LevelDistribution::normalized(int floor_level, std::vector<double> weights) {
  double sum = 0.0;
  for (double& w : weights) {
    if (!std::isfinite(w)) {
      throw ValidationError(ValidationError::Code::bad_distribution, "non-finite weight");
    }
    if (w < 0.0) {
      if (w < -1e-12) {
        throw ValidationError(ValidationError::Code::bad_distribution, "negative weight");
      }
      w = 0.0;
    }
    sum += w;
  }
  if (!(sum > 0.0)) {
    throw ValidationError(ValidationError::Code::bad_distribution, "weights sum to zero");
  }
  for (double& w : weights) w /= sum;
  // Remove the last crumb of rounding so the constructor's 1e-12 check holds.
  double s2 = 0.0;
  for (double w : weights) s2 += w;
  for (double& w : weights) w /= s2;
  return LevelDistribution(floor_level, std::move(weights));
}

double LevelDistribution::at(int level) const {
  if (level < floor_level_ || level > level_max()) return 0.0;
  return probs_[static_cast<std::size_t>(level - floor_level_)];
}

double total_variation(const LevelDistribution& a, const LevelDistribution& b) {
  const int lo = std::min(a.floor_level(), b.floor_level());
  const int hi = std::max(a.level_max(), b.level_max());
  double l1 = 0.0;
  for (int level = lo; level <= hi; ++level) {
    l1 += std::abs(a.at(level) - b.at(level));
  }
  return 0.5 * l1;
}

}  // namespace rqinv
