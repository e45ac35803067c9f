#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "rqinv/laplace.hpp"
#include "rqinv/model.hpp"

namespace rqinv {

/// Rates of the exponential holding times traversed by a run of consecutive
/// demands, in traversal order. May be empty where an operation defines the
/// empty-chain convention (transforms: empty product = 1).
class RateChain {
 public:
  RateChain() = default;
  explicit RateChain(std::vector<double> rates);

  bool empty() const { return rates_.empty(); }
  std::size_t size() const { return rates_.size(); }
  const std::vector<double>& rates() const { return rates_; }

 private:
  std::vector<double> rates_;
};

/// Route selector for kernel evaluation. The distinct-rate closed forms
/// cancel catastrophically when rates cluster; the Erlang forms require all
/// rates bitwise equal; inversion works everywhere but costs more.
struct EvalStrategy {
  enum class Mode { closed_form_distinct, closed_form_erlang, laplace_inversion };
  Mode mode = Mode::closed_form_distinct;
  double distinctness_tolerance = 1e-6;
};

/// Picks the evaluation route for a chain plus (for g/h) the landing-level
/// rate. Closed forms are chosen only when the partial-fraction coefficients
/// are small enough that double-precision cancellation stays below ~1e-9.
EvalStrategy choose_strategy(const RateChain& chain, std::optional<double> landing_rate,
                             double distinctness_tolerance = 1e-6);

struct KernelOptions {
  std::optional<EvalStrategy> strategy;  // empty: choose automatically
  double inversion_accuracy = 1e-8;
  InversionOptions inversion = {};
};

/// Density f of the sum of independent exponentials with the chain's rates,
/// i.e. of the time to traverse the whole chain. Chain must be non-empty.
double hypo_density(const RateChain& chain, double t, const KernelOptions& options = {});

/// Laplace transform of hypo_density: product of rate/(rate+s) over the
/// chain. Empty chain gives 1. Throws PoleHit at s == -rate exactly.
std::complex<double> hypo_density_transform(const RateChain& chain, std::complex<double> s);

/// Probability g(l, d, t) that the level drops from `level` to `level - drop`
/// within time t, given no order arrives before t. Requires
/// level - drop >= floor.
double decrease_probability(const RateProfile& profile, int level, int drop, double t,
                            const KernelOptions& options = {});

std::complex<double> decrease_probability_transform(const RateProfile& profile, int level,
                                                    int drop, std::complex<double> s);

/// Expected time h(l', l, t) spent at `level` during [0, t] when starting at
/// `level_start` with the next order due at t. Requires
/// floor <= level <= level_start.
double expected_level_time(const RateProfile& profile, int level_start, int level, double t,
                           const KernelOptions& options = {});

std::complex<double> expected_level_time_transform(const RateProfile& profile, int level_start,
                                                   int level, std::complex<double> s);

}  // namespace rqinv
