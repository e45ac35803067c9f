#pragma once

#include <stdexcept>
#include <string>

namespace rqinv {

/// Malformed input: bad profile, policy, scenario, or config file.
class ValidationError : public std::runtime_error {
 public:
  enum class Code {
    no_floor,            // no absorbing level exists; outstanding orders unbounded
    zero_interior_rate,  // rate 0 strictly between the floor and the top level
    negative_rate,
    incomplete_range,    // levels missing from [floor, r+q]
    extra_levels,        // rates supplied above r+q
    floor_above_reorder, // floor > r: no order is ever triggered
    bad_policy,
    bad_distribution,
    not_q1,
    empty_chain,
    pole_hit,
    level_out_of_range,
    bad_config,
  };

  ValidationError(Code code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

/// A numerical routine could not meet its accuracy or convergence contract.
/// Carries the last residual / error estimate so callers can report it.
class NumericalError : public std::runtime_error {
 public:
  enum class Code {
    accuracy_not_reached,
    quadrature_failure,
    no_convergence,
    stalled,
  };

  NumericalError(Code code, const std::string& what, double residual = 0.0)
      : std::runtime_error(what), code_(code), residual_(residual) {}
  Code code() const noexcept { return code_; }
  double residual() const noexcept { return residual_; }

 private:
  Code code_;
  double residual_;
};

}  // namespace rqinv
