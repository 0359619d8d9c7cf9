#pragma once

// Shape-invariant effective-mass models: h-(x; lambda) = h+(x; lambda) + 2 lambda
// with W_m = g/sqrt(m), g = gamma + lambda int sqrt(m). The potential
//   v+ = g^2/4 - (lambda^2 - K3^2)/(4 g^2) + m''/(4m^2) - (7/16) m'^2/m^3 - (lambda + l1/2)
// has a spectrum built algebraically from the two zero modes of A by
// repeated application of A^+.

#include <vector>

#include "ssusy/domain.hpp"
#include "ssusy/susy2.hpp"

namespace ssusy::shapeinv {

// Generic mass-function form of v+.
double si_potential_at(const MassProfile& profile, const SIParams& params, double x);
GridFunction si_potential(const MassProfile& profile, const SIParams& params,
                          const Grid& grid);

// Same potential with the mass terms written out per profile (hyperbolic
// sech^2 form, algebraic rational form, constant-mass limit).
double si_potential_specialized(const MassProfile& profile, const SIParams& params,
                                double x);

// Constant-mass limit (gamma + lambda x)^2/4 - (lambda^2-K3^2)/(4 (gamma+lambda x)^2) - (lambda + l1/2).
double cm_limit_potential_at(const SIParams& params, double x);
GridFunction cm_limit_potential(const SIParams& params, const Grid& grid);

enum class RegimeKind { Large, Interior, Boundary };

// Large: lambda > K3/2. Interior(kappa): K3/2(kappa+1) < lambda < K3/(2 kappa).
// Boundary(kappa): lambda = K3/(2 kappa), with relative tie tolerance 1e-12.
struct Regime {
  RegimeKind kind = RegimeKind::Large;
  int kappa = 0;
};
inline constexpr double kRegimeTieTolerance = 1e-12;
Regime classify_regime(const SIParams& params);

struct SIModel {
  susy2::SecondOrderScheme scheme;
  GridFunction v_si;
  SingularityReport singularity;
  Regime regime;
};

// Builds the scheme and potential on `grid`; the node search for the
// singularity report covers the grid's extent.
SIModel build_model(const MassProfile& profile, const SIParams& params, const Grid& grid);

// Node of g, strength C = ((K3/lambda)^2 - 1)/(4 m(x0)), attractive for C < 0,
// repulsive for C > 0, admissible iff non-singular or -1/4 < C < 3/4.
SingularityReport singularity(const MassProfile& profile, const SIParams& params,
                              double search_half_width);
SingularityReport singularity(const SIModel& model);

// Coefficients (ascending powers of g) of the polynomial P with
// (A^+)^power psi_{0,j} = P(g) psi_{0,j}, from
//   P_{k+1} = lambda^2 P'' + (lambda(lambda - s K3)/g - 2 lambda g) P' + (g^2 + s K3 - 2 lambda) P,
// s = +1 for J2 and -1 for J1. Mass independent.
std::vector<double> ladder_polynomial(const SIParams& params, Branch branch, int power);

// Power of |g| carried by (A^+)^power psi_{0,j} at the node of g.
double node_exponent(const SIParams& params, Branch branch, int power);

// Levels 0..n_max. Entries whose wavefunction diverges at a node of g inside
// the model grid are flagged regular = false.
std::vector<SpectrumEntry> spectrum(const SIModel& model, int n_max);
std::vector<SpectrumEntry> spectrum(const SIParams& params, int n_max, bool has_node);

// Levels seen by a Dirichlet wall at the node of g (Friedrichs extension):
// entries whose node exponent is <= 1/2 lie outside the form domain and are
// marked regular = false. Without a node the entries pass through unchanged.
std::vector<SpectrumEntry> friedrichs_selection(const SIParams& params,
                                                std::vector<SpectrumEntry> entries,
                                                bool has_node);

// Closed form P(g) m^{1/4} |g|^{p_j} e^{-g^2/(4 lambda)} with p_2 = (lambda-K3)/(2 lambda),
// p_1 = (lambda+K3)/(2 lambda); unit L2 norm on the grid when finite.
GridFunction ladder_closed_form(const MassProfile& profile, const SIParams& params,
                                const SpectrumEntry& entry, const Grid& grid);

// (A^+)^power applied numerically to the branch zero mode, renormalized after
// every application. Throws UnderResolved when the classically allowed
// region of the level reaches within 20 points of either grid end.
inline constexpr std::size_t kTurningMargin = 20;
GridFunction ladder_state(const SIModel& model, const SpectrumEntry& entry);

}  // namespace ssusy::shapeinv
