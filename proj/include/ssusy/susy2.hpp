#pragma once

// Second-order supercharges for effective-mass Hamiltonians
//   A   = (1/m) d^2 + W d + c,
//   A^+ = (1/m) d^2 - (W + 2m'/m^2) d + (c - W_m'),   W_m = W + m'/m^2,
// with h_pm = -d (1/m) d + v_pm satisfying A^+ A = h+^2 + l1 h+ + l2 and
// A h+ = h- A. The superpotential is always the SI one, W_m = g/sqrt(m);
// the v_pm / c formulas themselves are generic in W_m.

#include <array>
#include <optional>

#include "ssusy/domain.hpp"

namespace ssusy::susy2 {

// Everything the scheme knows at a single point.
struct SchemePoint {
  double m;
  double dm;
  double wm;
  double dwm;
  double d2wm;
  double w;
  double c;
  double v_plus;
  double v_minus;
};

enum class NodePolicy { Allow, Strict };

class SecondOrderScheme {
 public:
  SecondOrderScheme(MassProfile profile, SIParams params, Grid grid);

  const MassProfile& profile() const { return profile_; }
  const SIParams& params() const { return params_; }
  const Grid& grid() const { return grid_; }

  SchemePoint at(double x) const;
  double wm(double x) const;
  double w(double x) const;
  // c(x) with the 1/g^2 pieces combined analytically; the singular term
  // (lambda^2 - K3^2)/(4 g^2) is dropped exactly when lambda == K3.
  double c(double x) const;
  // c(x) evaluated term by term from W_m, W_m', W_m'' and the mass.
  double c_generic(double x) const;

  const GridFunction& v_plus() const { return v_plus_; }
  const GridFunction& v_minus() const { return v_minus_; }
  // Node of g within the grid, if any.
  std::optional<double> node() const { return node_; }

 private:
  MassProfile profile_;
  SIParams params_;
  Grid grid_;
  GridFunction v_plus_;
  GridFunction v_minus_;
  std::optional<double> node_;
};

// Strict policy throws SuperpotentialNode (with location) when g vanishes on
// the grid and lambda != K3.
SecondOrderScheme build_scheme(const MassProfile& profile, const SIParams& params,
                               const Grid& grid, NodePolicy policy = NodePolicy::Allow);

// 5-point stencils; the two outermost points per side use one-sided
// stencils. Throws GridTooSmall below 5 points.
GridFunction apply_A(const SecondOrderScheme& scheme, const GridFunction& f);
GridFunction apply_A_dagger(const SecondOrderScheme& scheme, const GridFunction& f);
GridFunction apply_h_plus(const SecondOrderScheme& scheme, const GridFunction& f);
GridFunction apply_h_minus(const SecondOrderScheme& scheme, const GridFunction& f);

// eta_j = -(l1 + (-1)^j K3)/2.
double eta(const SIParams& params, int j);

// F_j = (m W_m^2 + (-1)^j K3) / (2 W_m).
double zero_mode_flux(const SecondOrderScheme& scheme, int j, double x);

// Index 0 holds j = 1, index 1 holds j = 2.
struct ZeroModes {
  std::array<GridFunction, 2> plus;
  std::array<GridFunction, 2> minus;
  std::array<bool, 2> plus_normalizable{};
  std::array<bool, 2> minus_normalizable{};
  // Power of |g| carried by each mode at a node of g.
  std::array<double, 2> plus_exponent{};
  std::array<double, 2> minus_exponent{};
};

// psi^{pm}_{0,j} ~ sqrt(m W_m) exp(-+ int F_j). Under the SI superpotential
// int F_j = int (g sqrt(m)/2) + (-1)^j (K3 / 2 lambda) ln|g|; the regular part
// is integrated numerically (5-point Gauss per cell), the logarithm analytically,
// so the modes stay defined on both sides of a node of g. Normalizable modes
// have unit L2 norm, the others max-norm 1.
ZeroModes zero_modes(const SecondOrderScheme& scheme);

// Interior-trimmed ||h+ psi_{0,j} - eta_j psi_{0,j}|| / ||psi_{0,j}||.
double formal_eigencheck(const SecondOrderScheme& scheme, int j);

struct IdentityResidual {
  double r_plus;   // ||A^+A f - (h+^2 + l1 h+ + l2) f|| / ||f||
  double r_minus;  // ||A h+ f - h- A f|| / ||f||
};
IdentityResidual identity_residual(const SecondOrderScheme& scheme, const GridFunction& f);

// Zero-mode equation in constant-mass form: psi^pm_0 = sqrt(m) phi e^{-+ 1/2 int m W_m}
// maps the zero modes onto -phi'' + (U^2 + U') phi = 0 with
// U = (W_m' + sigma K3) / (2 W_m); sigma = +1 for psi^+_{0,1} and psi^-_{0,2},
// -1 for psi^+_{0,2} and psi^-_{0,1}.
GridFunction to_constant_mass_form(const SecondOrderScheme& scheme, const GridFunction& psi,
                                   int sector_sign);
double constant_mass_form_residual(const SecondOrderScheme& scheme, const GridFunction& phi,
                                   int sigma);

}  // namespace ssusy::susy2
