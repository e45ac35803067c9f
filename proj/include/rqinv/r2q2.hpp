#pragma once

#include <span>

#include "rqinv/model.hpp"

namespace rqinv {

/// Solution of the placement-density integral equation for the r=2, q=2
/// system with constant rate above an absorbing level 0:
///   z(t) = coeff_const + coeff_linear*t
///        + coeff_pos*e^{sqrt(2) lambda t} + coeff_neg*e^{-sqrt(2) lambda t}.
/// coeff_linear is identically 0; z is positive on [0, tau) and z(tau) = 0.
struct ZSolution {
  double lambda = 1.0;
  double tau = 1.0;
  double coeff_const = 0.0;
  double coeff_linear = 0.0;
  double coeff_pos = 0.0;
  double coeff_neg = 0.0;

  double operator()(double t) const;
  double second_derivative(double t) const;
  double fourth_derivative(double t) const;
};

/// Closed-form coefficients of z for given lambda, tau (both positive).
ZSolution z_constants(double lambda, double tau);

/// Max absolute defect of z against its defining renewal-type integral
/// equation, with the convolution evaluated by quadrature on each grid point.
double integral_equation_residual(const ZSolution& sol, std::span<const double> t_grid);

/// Max absolute value of -2 lambda^2 z'' + z'''' on the grid; zero up to
/// round-off by construction, kept as a transcription check.
double ode_residual(const ZSolution& sol, std::span<const double> t_grid);

/// Equilibrium level distribution over levels 0..4 for the r=2, q=2 system,
/// reconstructed from z via the occupancy-time kernels and quadrature.
LevelDistribution solve_r2q2(double lambda, double tau);

}  // namespace rqinv
