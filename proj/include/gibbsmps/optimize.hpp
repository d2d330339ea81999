#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace gibbsmps {

using Objective = std::function<double(const std::vector<double>&)>;

struct OptimResult {
  std::vector<double> x;
  double f = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;  // trust region / simplex reached rho_end
};

/// Derivative-free trust-region minimizer with Powell-style COBYLA
/// semantics, unconstrained: a simplex of n+1 points carries a linear
/// interpolation model of the objective; steps of length rho minimize the
/// model, degenerate simplices are repaired by geometry steps, and rho is
/// halved once the current scale is exploited, down to rho_end.
/// Deterministic: no randomness is used. `max_iter` caps objective
/// evaluations and must be at least dimension + 2.
OptimResult cobyla_minimize(const Objective& f, const std::vector<double>& x0,
                            std::size_t max_iter, double rho_begin, double rho_end);

/// Nelder-Mead simplex fallback with the same calling convention.
OptimResult nelder_mead_minimize(const Objective& f, const std::vector<double>& x0,
                                 std::size_t max_iter, double rho_begin, double rho_end);

}  // namespace gibbsmps
