#include "rissop/manifold.hpp"

#include <cmath>
#include <stdexcept>

namespace rissop {

CMatrix normalize_rows(const CMatrix& v) {
  CMatrix out(v.rows(), v.cols());
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    const double norm = v.row(i).norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
      throw std::domain_error("cannot retract a zero or non-finite row");
    out.row(i) = v.row(i) / norm;
  }
  return out;
}

CMatrix tangent_project(const CMatrix& v, const CMatrix& u) {
  CMatrix out(v.rows(), v.cols());
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    const double r = v.row(i).conjugate().cwiseProduct(u.row(i)).sum().real();
    out.row(i) = u.row(i) - r * v.row(i);
  }
  return out;
}

double tangent_inner(const CMatrix& a, const CMatrix& b) {
  return a.conjugate().cwiseProduct(b).sum().real();
}

CgResult minimize_unit_rows(const std::function<double(const CMatrix&)>& f,
                            const std::function<CMatrix(const CMatrix&)>& egrad,
                            const CMatrix& v0, const CgOptions& opt) {
  CgResult res;
  CMatrix v = normalize_rows(v0);
  double fv = f(v);
  CMatrix grad = tangent_project(v, egrad(v));
  if (!grad.allFinite())
    throw std::domain_error("non-finite gradient at the initial point");
  CMatrix dir = -grad;
  res.trace.push_back(fv);

  int flat_steps = 0;
  for (int iter = 0; iter < opt.max_iter; ++iter) {
    const double gnorm = grad.norm();
    if (gnorm <= opt.grad_tol) {
      res.converged = true;
      break;
    }

    double slope = tangent_inner(grad, dir);
    if (slope >= 0.0) {  // not a descent direction; restart on the gradient
      dir = -grad;
      slope = -gnorm * gnorm;
    }

    // Armijo backtracking from the caller-supplied trial step.
    double step = opt.initial_step;
    CMatrix v_next;
    double f_next = fv;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      v_next = normalize_rows(v + step * dir);
      f_next = f(v_next);
      if (f_next <= fv + opt.armijo_c1 * step * slope) {
        accepted = true;
        break;
      }
      step *= opt.backtrack;
    }
    if (!accepted) break;  // no progress even at vanishing steps

    CMatrix grad_next = tangent_project(v_next, egrad(v_next));
    if (!grad_next.allFinite())
      throw std::domain_error("non-finite gradient during descent");

    // Polak-Ribiere momentum with projection transport, clamped at zero.
    const double denom = gnorm * gnorm;
    const CMatrix grad_old_moved = tangent_project(v_next, grad);
    double momentum =
        tangent_inner(grad_next, grad_next - grad_old_moved) / denom;
    momentum = std::max(momentum, 0.0);
    dir = -grad_next + momentum * tangent_project(v_next, dir);

    const double drop = fv - f_next;
    v.swap(v_next);
    fv = f_next;
    grad.swap(grad_next);
    res.iterations = iter + 1;
    res.trace.push_back(fv);

    if (drop <= opt.stagnation_rel * std::max(1.0, std::abs(fv))) {
      if (++flat_steps >= opt.stagnation_window) {
        res.stagnated = true;
        break;
      }
    } else {
      flat_steps = 0;
    }
  }

  if (!res.converged && grad.norm() <= opt.grad_tol) res.converged = true;
  res.point = std::move(v);
  res.value = fv;
  return res;
}

}  // namespace rissop
