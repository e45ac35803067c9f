#include "rqinv/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

namespace rqinv {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Poisson pmf e^-mu mu^k / k!, stable in log space.
double poisson_pmf(int k, double mu) {
  if (mu == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(-mu + k * std::log(mu) - std::lgamma(k + 1.0));
}

// P(N >= k) for N ~ Poisson(mu), i.e. the Erlang(k) CDF at the underlying time.
double poisson_tail(int k, double mu) {
  if (k <= 0) return 1.0;
  return boost::math::gamma_p(static_cast<double>(k), mu);
}

// Partial-fraction coefficients c_i = prod_{j != i} rate_j / (rate_j - rate_i)
// of the hypoexponential density. Requires pairwise-distinct rates.
std::vector<double> partial_fraction_coeffs(const std::vector<double>& rates) {
  const std::size_t n = rates.size();
  std::vector<double> c(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      c[i] *= rates[j] / (rates[j] - rates[i]);
    }
  }
  return c;
}

void check_pole(std::complex<double> s, double rate) {
  if (s == std::complex<double>(-rate, 0.0)) {
    throw ValidationError(ValidationError::Code::pole_hit,
                          "transform evaluated at its pole s = " + std::to_string(-rate));
  }
}

std::vector<double> chain_between(const RateProfile& profile, int lo, int hi) {
  std::vector<double> rates;
  rates.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int level = lo; level <= hi; ++level) rates.push_back(profile.rate(level));
  return rates;
}

double invert(const std::function<std::complex<double>(std::complex<double>)>& transform,
              double t, const KernelOptions& options) {
  return invert_laplace(transform, t, options.inversion_accuracy, options.inversion);
}

EvalStrategy pick(const std::vector<double>& chain, std::optional<double> landing,
                  const KernelOptions& options) {
  if (options.strategy) return *options.strategy;
  RateChain rc(chain);
  return choose_strategy(rc, landing);
}

}  // namespace

RateChain::RateChain(std::vector<double> rates) : rates_(std::move(rates)) {
  for (double r : rates_) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw ValidationError(ValidationError::Code::negative_rate,
                            "chain rates must be strictly positive and finite");
    }
  }
}

EvalStrategy choose_strategy(const RateChain& chain, std::optional<double> landing_rate,
                             double distinctness_tolerance) {
  EvalStrategy strategy;
  strategy.distinctness_tolerance = distinctness_tolerance;
  const auto& rates = chain.rates();

  if (rates.size() <= 1 && !landing_rate) {
    strategy.mode = EvalStrategy::Mode::closed_form_distinct;
    return strategy;
  }

  const bool chain_uniform =
      !rates.empty() &&
      std::all_of(rates.begin(), rates.end(), [&](double r) { return r == rates.front(); });
  if (chain_uniform &&
      (!landing_rate || *landing_rate == rates.front() || *landing_rate == 0.0)) {
    strategy.mode = rates.size() == 1 && !landing_rate
                        ? EvalStrategy::Mode::closed_form_distinct
                        : EvalStrategy::Mode::closed_form_erlang;
    return strategy;
  }

  std::vector<double> all = rates;
  if (landing_rate) all.push_back(*landing_rate);

  if (all.size() > 13) {  // chain length cap of 12 plus the landing rate
    strategy.mode = EvalStrategy::Mode::laplace_inversion;
    return strategy;
  }
  double coeff_bound = 0.0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    double prod = 1.0;
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (j == i) continue;
      const double gap = std::abs(all[j] - all[i]);
      const double mag = std::max(std::abs(all[i]), std::abs(all[j]));
      if (gap <= distinctness_tolerance * mag) {
        strategy.mode = EvalStrategy::Mode::laplace_inversion;
        return strategy;
      }
      prod *= mag / gap;
    }
    coeff_bound = std::max(coeff_bound, prod);
  }
  // Cancellation guard: the closed forms sum terms of size ~coeff_bound that
  // cancel to O(1); keep them only while the round-off stays below ~1e-9.
  if (coeff_bound * static_cast<double>(all.size()) * kEps > 5e-10) {
    strategy.mode = EvalStrategy::Mode::laplace_inversion;
    return strategy;
  }
  strategy.mode = EvalStrategy::Mode::closed_form_distinct;
  return strategy;
}

double hypo_density(const RateChain& chain, double t, const KernelOptions& options) {
  if (chain.empty()) {
    throw ValidationError(ValidationError::Code::empty_chain,
                          "hypoexponential density of an empty chain is undefined");
  }
  if (t < 0.0) throw std::invalid_argument("hypo_density requires t >= 0");
  const auto& rates = chain.rates();
  const std::size_t n = rates.size();
  if (t == 0.0) return n == 1 ? rates[0] : 0.0;

  const EvalStrategy strategy = pick(rates, std::nullopt, options);
  switch (strategy.mode) {
    case EvalStrategy::Mode::closed_form_erlang: {
      const double lambda = rates.front();
      return lambda * poisson_pmf(static_cast<int>(n) - 1, lambda * t);
    }
    case EvalStrategy::Mode::closed_form_distinct: {
      if (n == 1) return rates[0] * std::exp(-rates[0] * t);
      const std::vector<double> c = partial_fraction_coeffs(rates);
      double f = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        f += c[i] * rates[i] * std::exp(-rates[i] * t);
      }
      return std::max(f, 0.0);
    }
    case EvalStrategy::Mode::laplace_inversion:
      return std::max(
          invert([&](std::complex<double> s) { return hypo_density_transform(chain, s); }, t,
                 options),
          0.0);
  }
  return 0.0;  // unreachable
}

std::complex<double> hypo_density_transform(const RateChain& chain, std::complex<double> s) {
  std::complex<double> product(1.0, 0.0);
  for (double rate : chain.rates()) {
    check_pole(s, rate);
    product *= rate / (rate + s);
  }
  return product;
}

double decrease_probability(const RateProfile& profile, int level, int drop, double t,
                            const KernelOptions& options) {
  if (drop < 0 || !profile.contains(level) || level - drop < profile.floor_level()) {
    throw ValidationError(ValidationError::Code::level_out_of_range,
                          "decrease from " + std::to_string(level) + " by " +
                              std::to_string(drop) + " leaves the profile range");
  }
  if (t < 0.0) throw std::invalid_argument("decrease_probability requires t >= 0");
  if (t == 0.0) return drop == 0 ? 1.0 : 0.0;

  const double rate_here = profile.rate(level);
  if (drop == 0) return std::exp(-rate_here * t);

  const std::vector<double> chain = chain_between(profile, level - drop + 1, level);
  const double landing = profile.rate(level - drop);
  const EvalStrategy strategy = pick(chain, landing, options);

  double g = 0.0;
  switch (strategy.mode) {
    case EvalStrategy::Mode::closed_form_erlang: {
      const double lambda = chain.front();
      g = landing == 0.0 ? poisson_tail(drop, lambda * t) : poisson_pmf(drop, lambda * t);
      break;
    }
    case EvalStrategy::Mode::closed_form_distinct: {
      // g = sum_i c_i * (rate_i / (landing - rate_i)) (e^{-rate_i t} - e^{-landing t});
      // the landing = 0 absorbing case needs no special handling here.
      const std::vector<double> c = partial_fraction_coeffs(chain);
      const double e_land = std::exp(-landing * t);
      for (std::size_t i = 0; i < chain.size(); ++i) {
        g += c[i] * chain[i] / (landing - chain[i]) * (std::exp(-chain[i] * t) - e_land);
      }
      break;
    }
    case EvalStrategy::Mode::laplace_inversion:
      g = invert(
          [&](std::complex<double> s) {
            return decrease_probability_transform(profile, level, drop, s);
          },
          t, options);
      break;
  }
  return std::clamp(g, 0.0, 1.0);
}

std::complex<double> decrease_probability_transform(const RateProfile& profile, int level,
                                                    int drop, std::complex<double> s) {
  if (drop < 0 || !profile.contains(level) || level - drop < profile.floor_level()) {
    throw ValidationError(ValidationError::Code::level_out_of_range,
                          "decrease from " + std::to_string(level) + " by " +
                              std::to_string(drop) + " leaves the profile range");
  }
  if (drop == 0) {
    const double rate_here = profile.rate(level);
    check_pole(s, rate_here);
    return 1.0 / (rate_here + s);
  }
  const double landing = profile.rate(level - drop);
  check_pole(s, landing);
  RateChain chain(chain_between(profile, level - drop + 1, level));
  return hypo_density_transform(chain, s) / (landing + s);
}

double expected_level_time(const RateProfile& profile, int level_start, int level, double t,
                           const KernelOptions& options) {
  if (!profile.contains(level_start) || level < profile.floor_level() || level > level_start) {
    throw ValidationError(ValidationError::Code::level_out_of_range,
                          "expected_level_time needs floor <= level <= start level");
  }
  if (t < 0.0) throw std::invalid_argument("expected_level_time requires t >= 0");
  if (t == 0.0) return 0.0;

  const double rate_here = profile.rate(level);
  if (level == level_start) {
    return rate_here == 0.0 ? t : -std::expm1(-rate_here * t) / rate_here;
  }

  const std::vector<double> chain = chain_between(profile, level + 1, level_start);
  const EvalStrategy strategy = pick(chain, rate_here, options);

  double h = 0.0;
  switch (strategy.mode) {
    case EvalStrategy::Mode::closed_form_erlang: {
      const double lambda = chain.front();
      const int n = static_cast<int>(chain.size());
      if (rate_here == 0.0) {
        // Time at the absorbing floor: integrate the Erlang(n) CDF.
        double tails = 0.0;
        for (int j = 1; j <= n; ++j) tails += poisson_tail(j, lambda * t);
        h = t - tails / lambda;
      } else {
        h = poisson_tail(n + 1, lambda * t) / lambda;
      }
      break;
    }
    case EvalStrategy::Mode::closed_form_distinct: {
      const std::vector<double> c = partial_fraction_coeffs(chain);
      if (rate_here == 0.0) {
        for (std::size_t i = 0; i < chain.size(); ++i) {
          h += c[i] * (t + std::expm1(-chain[i] * t) / chain[i]);
        }
      } else {
        const double base = -std::expm1(-rate_here * t) / rate_here;
        const double e_here = std::exp(-rate_here * t);
        for (std::size_t i = 0; i < chain.size(); ++i) {
          h += c[i] * (base + (std::exp(-chain[i] * t) - e_here) / (chain[i] - rate_here));
        }
      }
      break;
    }
    case EvalStrategy::Mode::laplace_inversion:
      h = invert(
          [&](std::complex<double> s) {
            return expected_level_time_transform(profile, level_start, level, s);
          },
          t, options);
      break;
  }
  return std::clamp(h, 0.0, t);
}

std::complex<double> expected_level_time_transform(const RateProfile& profile, int level_start,
                                                   int level, std::complex<double> s) {
  if (!profile.contains(level_start) || level < profile.floor_level() || level > level_start) {
    throw ValidationError(ValidationError::Code::level_out_of_range,
                          "expected_level_time needs floor <= level <= start level");
  }
  const double rate_here = profile.rate(level);
  check_pole(s, 0.0);
  check_pole(s, rate_here);
  std::complex<double> value = 1.0 / (s * (rate_here + s));
  if (level < level_start) {
    RateChain chain(chain_between(profile, level + 1, level_start));
    value *= hypo_density_transform(chain, s);
  }
  return value;
}

}  // namespace rqinv
