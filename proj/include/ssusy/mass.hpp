#pragma once

#include <optional>

#include "ssusy/domain.hpp"

namespace ssusy::mass {

// Closed-form values of the mass at one point. sqrt_m is the analytic branch
// (alpha + beta tanh x for the hyperbolic profile), d_sqrt_m / d2_sqrt_m its
// derivatives, int_sqrt_m the antiderivative with zero at the profile's
// natural origin (x = 0).
struct MassEval {
  double m;
  double dm;
  double d2m;
  double sqrt_m;
  double d_sqrt_m;
  double d2_sqrt_m;
  double int_sqrt_m;
};

// Throws InvalidInput for non-finite x.
MassEval eval(const MassProfile& profile, double x);

// 1/sqrt(m) and its first two derivatives, closed form.
struct InvSqrtMass {
  double value;
  double d1;
  double d2;
};
InvSqrtMass inv_sqrt_mass(const MassProfile& profile, double x);

// g(x) = gamma + lambda * int sqrt(m), with g' = lambda sqrt(m) > 0.
double g_function(const MassProfile& profile, const SIParams& params, double x);

struct GEval {
  double g;
  double dg;
  double d2g;
};
GEval g_eval(const MassProfile& profile, const SIParams& params, double x);

// Unique root of g on [-half_width, half_width] by bisection, or nullopt if g
// keeps its sign there.
std::optional<double> find_g_node(const MassProfile& profile, const SIParams& params,
                                  double half_width);

// Node of g inside [lo, hi], same contract as find_g_node.
std::optional<double> find_g_node_in(const MassProfile& profile, const SIParams& params,
                                     double lo, double hi);

// Ordering-ambiguity pseudo-potential
//   rho(m) = ((1+b)/2) m''/m^2 - eta m'^2/m^3,  eta = 1 + b + a(a+b+1).
double pseudo_potential(const MassProfile& profile, const OrderingParams& ord, double x);

// Second-order superpotential under the SI construction, W_m = g / sqrt(m),
// with closed-form first and second derivatives.
struct SuperpotentialEval {
  double wm;
  double dwm;
  double d2wm;
};
SuperpotentialEval si_superpotential(const MassProfile& profile, const SIParams& params,
                                     double x);

}  // namespace ssusy::mass
