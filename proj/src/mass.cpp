#include "ssusy/mass.hpp"

#include <cmath>
#include <numbers>

#include "ssusy/errors.hpp"

namespace ssusy::mass {

namespace {

// ln cosh x without overflow for large |x|.
double log_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

}  // namespace

MassEval eval(const MassProfile& profile, double x) {
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::InvalidInput, "mass evaluated at non-finite x");
  }
  double s = 0.0, ds = 0.0, d2s = 0.0, integral = 0.0;
  switch (profile.kind()) {
    case MassKind::Constant:
      s = std::sqrt(profile.m0());
      integral = s * x;
      break;
    case MassKind::Hyperbolic: {
      const double a = profile.alpha();
      const double b = profile.beta();
      const double t = std::tanh(x);
      const double sech2 = 1.0 - t * t;
      s = a + b * t;
      ds = b * sech2;
      d2s = -2.0 * b * sech2 * t;
      integral = a * x + b * log_cosh(x);
      break;
    }
    case MassKind::Algebraic: {
      const double a = profile.alpha();
      const double q = 1.0 + x * x;
      s = (a + x * x) / q;
      ds = -2.0 * x * (a - 1.0) / (q * q);
      d2s = (a - 1.0) * (6.0 * x * x - 2.0) / (q * q * q);
      integral = x + (a - 1.0) * std::atan(x);
      break;
    }
  }
  MassEval e{};
  e.sqrt_m = s;
  e.d_sqrt_m = ds;
  e.d2_sqrt_m = d2s;
  e.m = s * s;
  e.dm = 2.0 * s * ds;
  e.d2m = 2.0 * ds * ds + 2.0 * s * d2s;
  e.int_sqrt_m = integral;
  return e;
}

InvSqrtMass inv_sqrt_mass(const MassProfile& profile, double x) {
  const MassEval e = eval(profile, x);
  const double s = e.sqrt_m;
  return {1.0 / s, -e.d_sqrt_m / (s * s),
          -e.d2_sqrt_m / (s * s) + 2.0 * e.d_sqrt_m * e.d_sqrt_m / (s * s * s)};
}

double g_function(const MassProfile& profile, const SIParams& params, double x) {
  return params.gamma + params.lambda * eval(profile, x).int_sqrt_m;
}

GEval g_eval(const MassProfile& profile, const SIParams& params, double x) {
  const MassEval e = eval(profile, x);
  return {params.gamma + params.lambda * e.int_sqrt_m, params.lambda * e.sqrt_m,
          params.lambda * e.d_sqrt_m};
}

std::optional<double> find_g_node_in(const MassProfile& profile, const SIParams& params,
                                     double lo, double hi) {
  const double tol = 1e-12 * (1.0 + params.lambda);
  double g_lo = g_function(profile, params, lo);
  double g_hi = g_function(profile, params, hi);
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  if ((g_lo > 0.0) == (g_hi > 0.0)) return std::nullopt;
  // g is strictly increasing, so the bracket always shrinks onto the root.
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = g_function(profile, params, mid);
    if (std::abs(g_mid) < tol || mid == lo || mid == hi) return mid;
    if ((g_mid > 0.0) == (g_lo > 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::optional<double> find_g_node(const MassProfile& profile, const SIParams& params,
                                  double half_width) {
  if (!(half_width > 0.0)) {
    throw Error(ErrorCode::InvalidInput, "search half width must be > 0");
  }
  return find_g_node_in(profile, params, -half_width, half_width);
}

double pseudo_potential(const MassProfile& profile, const OrderingParams& ord, double x) {
  const MassEval e = eval(profile, x);
  const double m2 = e.m * e.m;
  return 0.5 * (1.0 + ord.b) * e.d2m / m2 - ord.eta() * e.dm * e.dm / (m2 * e.m);
}

SuperpotentialEval si_superpotential(const MassProfile& profile, const SIParams& params,
                                     double x) {
  const MassEval e = eval(profile, x);
  const double lam = params.lambda;
  const double g = params.gamma + lam * e.int_sqrt_m;
  const double s = e.sqrt_m, ds = e.d_sqrt_m, d2s = e.d2_sqrt_m;
  // W_m = g/s, g' = lam s.
  return {g / s, lam - g * ds / (s * s),
          -lam * ds / s - g * d2s / (s * s) + 2.0 * g * ds * ds / (s * s * s)};
}

}  // namespace ssusy::mass
