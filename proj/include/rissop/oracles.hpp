#pragma once

#include <functional>

#include "rissop/types.hpp"

namespace rissop {

/// Independent reference computations used by the validation suite and the
/// test oracles. None of them share code with the closed-form paths they
/// check.

/// Regularized upper incomplete gamma via adaptive Simpson quadrature of the
/// defining integral (no series).
double quadrature_reg_upper_gamma(int m, double z, double rel_tol = 1e-12);

/// Exhaustive scan of f over the torus of n_axes unit-modulus coefficients at
/// `resolution` points per axis. Returns the best value found.
double torus_best(int n_axes, int resolution,
                  const std::function<double(const CVector&)>& f,
                  bool maximize);

}  // namespace rissop
