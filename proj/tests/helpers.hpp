#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "ssusy/domain.hpp"

namespace testing {

inline ssusy::SIParams fig1_params() { return {4.0, 4.0, 5.0, 1.0}; }
inline ssusy::SIParams fig3_params() { return {6.0, 4.0, 5.0, 1.0}; }
inline ssusy::SIParams fig5_params() { return {2.0, 4.0, 5.0, 1.0}; }
inline ssusy::MassProfile fig1_mass() { return ssusy::MassProfile::hyperbolic(2.0, 1.0); }
inline ssusy::MassProfile fig5_mass() { return ssusy::MassProfile::algebraic(2.0); }

// e^{-(x-c)^2/s}
inline ssusy::GridFunction gaussian(const ssusy::Grid& g, double c, double s) {
  return ssusy::GridFunction::sample(g, [&](double x) { return std::exp(-(x - c) * (x - c) / s); });
}

struct GaussianDraw {
  double c;
  double s;
};

// Centers in [-2, 2], widths in [0.5, 2]; fixed seed.
inline std::vector<GaussianDraw> gaussian_draws(int n, unsigned seed = 7) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> c(-2.0, 2.0), s(0.5, 2.0);
  std::vector<GaussianDraw> out;
  for (int i = 0; i < n; ++i) out.push_back({c(rng), s(rng)});
  return out;
}

// Adaptive Simpson, test-only quadrature oracle.
inline double simpson(const std::function<double(double)>& f, double a, double b, double fa,
                      double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-13) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return simpson(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 50);
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b,
                           std::size_t trim = 0) {
  double m = 0.0;
  for (std::size_t i = trim; i + trim < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Pointwise error after the best scalar fit of a onto b, relative to max|b|.
inline double projective_error(const std::vector<double>& a, const std::vector<double>& b,
                               std::size_t trim = 0) {
  double ab = 0.0, aa = 0.0, bmax = 0.0;
  for (std::size_t i = trim; i + trim < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bmax = std::max(bmax, std::abs(b[i]));
  }
  const double k = ab / aa;
  double err = 0.0;
  for (std::size_t i = trim; i + trim < a.size(); ++i) err = std::max(err, std::abs(k * a[i] - b[i]));
  return err / bmax;
}

}  // namespace testing
