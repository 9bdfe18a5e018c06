#pragma once

#include <functional>
#include <vector>

#include "rissop/types.hpp"

namespace rissop {

/// Product of complex spheres: matrices whose rows all have unit norm. With
/// one column this is the complex circle manifold of the phase vector; with
/// several columns it is the oblique factor set of the low-rank SDP.

/// Retraction: normalizes every row back onto its sphere.
CMatrix normalize_rows(const CMatrix& v);

/// Orthogonal projection of u onto the tangent space at v
/// (per row: u_i - Re<v_i, u_i> v_i). Also serves as the vector transport.
CMatrix tangent_project(const CMatrix& v, const CMatrix& u);

/// Riemannian metric: Re tr(a^H b).
double tangent_inner(const CMatrix& a, const CMatrix& b);

struct CgOptions {
  double grad_tol = 1e-6;       // stop when the Riemannian gradient norm falls below
  int max_iter = 1000;
  double initial_step = 1.0;    // Armijo trial step at each iteration
  double armijo_c1 = 1e-4;      // sufficient-decrease coefficient
  double backtrack = 0.5;       // step contraction factor
  double stagnation_rel = 1e-12;
  int stagnation_window = 50;
};

struct CgResult {
  CMatrix point;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;   // gradient norm reached grad_tol
  bool stagnated = false;   // objective froze before the gradient converged
  std::vector<double> trace;  // objective after each accepted step
};

/// Conjugate-gradient descent on the unit-row manifold with Polak-Ribiere
/// momentum (clamped at zero), Armijo backtracking line search and
/// projection-based transport. egrad must return the Euclidean gradient of f.
CgResult minimize_unit_rows(const std::function<double(const CMatrix&)>& f,
                            const std::function<CMatrix(const CMatrix&)>& egrad,
                            const CMatrix& v0, const CgOptions& opt = {});

}  // namespace rissop
