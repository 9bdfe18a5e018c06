#include "rissop/oracles.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace rissop {

namespace {

// Regularized integrand exp(-t + (m-1) ln t - ln Gamma(m)).
double gamma_integrand(int m, double t) {
  if (t <= 0.0) return m == 1 ? std::exp(-std::lgamma(m)) : 0.0;
  return std::exp(-t + (m - 1) * std::log(t) - std::lgamma(m));
}

double simpson(int m, double a, double b) {
  return (b - a) / 6.0 *
         (gamma_integrand(m, a) + 4.0 * gamma_integrand(m, 0.5 * (a + b)) +
          gamma_integrand(m, b));
}

double adaptive(int m, double a, double b, double whole, double eps,
                int depth) {
  const double mid = 0.5 * (a + b);
  const double left = simpson(m, a, mid);
  const double right = simpson(m, mid, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps)
    return left + right + delta / 15.0;
  return adaptive(m, a, mid, left, 0.5 * eps, depth - 1) +
         adaptive(m, mid, b, right, 0.5 * eps, depth - 1);
}

}  // namespace

double quadrature_reg_upper_gamma(int m, double z, double rel_tol) {
  if (m < 1) throw std::domain_error("shape must be a positive integer");
  if (z <= 0.0) return 1.0;
  // The integrand is negligible beyond its peak at t = m-1 plus a generous
  // tail allowance.
  const double upper = z + 50.0 + 12.0 * m;

  // Coarse pass to scale the adaptive tolerance.
  const int panels = 512;
  double rough = 0.0;
  const double h = (upper - z) / panels;
  for (int i = 0; i < panels; ++i)
    rough += simpson(m, z + i * h, z + (i + 1) * h);
  if (rough <= 0.0) return 0.0;

  const double eps = 0.25 * rel_tol * rough;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double a = z + i * h;
    const double b = z + (i + 1) * h;
    total += adaptive(m, a, b, simpson(m, a, b), eps / panels, 48);
  }
  return total;
}

double torus_best(int n_axes, int resolution,
                  const std::function<double(const CVector&)>& f,
                  bool maximize) {
  if (n_axes < 1 || n_axes > 3)
    throw std::invalid_argument("torus scan supports 1 to 3 axes");
  if (resolution < 2) throw std::invalid_argument("resolution must be >= 2");

  std::vector<Complex> circle(resolution);
  for (int k = 0; k < resolution; ++k)
    circle[k] = std::polar(1.0, 2.0 * M_PI * k / resolution);

  const double sign = maximize ? 1.0 : -1.0;
  double best = -std::numeric_limits<double>::infinity();
  CVector q(n_axes);
  if (n_axes == 1) {
    for (int i = 0; i < resolution; ++i) {
      q[0] = circle[i];
      best = std::max(best, sign * f(q));
    }
  } else if (n_axes == 2) {
    for (int i = 0; i < resolution; ++i) {
      q[0] = circle[i];
      for (int j = 0; j < resolution; ++j) {
        q[1] = circle[j];
        best = std::max(best, sign * f(q));
      }
    }
  } else {
    for (int i = 0; i < resolution; ++i) {
      q[0] = circle[i];
      for (int j = 0; j < resolution; ++j) {
        q[1] = circle[j];
        for (int k = 0; k < resolution; ++k) {
          q[2] = circle[k];
          best = std::max(best, sign * f(q));
        }
      }
    }
  }
  return sign * best;
}

}  // namespace rissop
