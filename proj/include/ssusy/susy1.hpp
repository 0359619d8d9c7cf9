#pragma once

// First-order SUSY for effective-mass Hamiltonians
//   A  =  (1/sqrt m) d + W,   A^+ = -(1/sqrt m) d + W - (1/sqrt m)',
//   H_pm = -d (1/m) d + V_pm,
// and the Type I / Type II reduction of the second-order scheme onto two
// first-order pairs.

#include <utility>
#include <vector>

#include "ssusy/domain.hpp"

namespace ssusy::susy1 {

enum class SuperpotentialLabel { Generic, TypeI_W1, TypeI_W2, TypeII_W1, TypeII_W2 };

struct FirstOrderSuperpotential {
  GridFunction w;
  SuperpotentialLabel label = SuperpotentialLabel::Generic;
};

template <class F>
FirstOrderSuperpotential sample_superpotential(const Grid& grid, F&& w) {
  return {GridFunction::sample(grid, std::forward<F>(w)), SuperpotentialLabel::Generic};
}

struct PartnerPair {
  GridFunction v_plus;
  GridFunction v_minus;
};

// V+ = W^2 - (W/sqrt m)',  V- = V+ + 2W'/sqrt m - (1/sqrt m)(1/sqrt m)''.
// W' by 4th-order central differences, mass terms in closed form.
// Throws NodeInDomain if W is non-finite anywhere on the grid.
PartnerPair partner_potentials_1(const FirstOrderSuperpotential& w,
                                 const MassProfile& profile);

struct GroundStates {
  GridFunction psi_plus;   // ~ exp(-int sqrt(m) W), max-norm 1
  GridFunction psi_minus;  // ~ sqrt(m) exp(+int sqrt(m) W), max-norm 1
  bool plus_normalizable = false;
  bool minus_normalizable = false;
};

// Integral by cumulative trapezoid from the grid midpoint. A state counts as
// normalizable when it is finite and |psi| < 1e-8 max|psi| at both ends; this
// stands in for the asymptotic divergence condition on int sqrt(m) W.
GroundStates ground_states_1(const FirstOrderSuperpotential& w, const MassProfile& profile);

inline constexpr double kDecayThreshold = 1e-8;
bool decays_at_both_ends(const GridFunction& psi, double threshold = kDecayThreshold);

// Operator applications on grid functions sharing W's grid.
GridFunction apply_A(const GridFunction& w, const MassProfile& profile,
                     const GridFunction& f);
GridFunction apply_A_dagger(const GridFunction& w, const MassProfile& profile,
                            const GridFunction& f);
// (-d (1/m) d + v) f, expanded as -(1/m) f'' + (m'/m^2) f' + v f.
GridFunction apply_hamiltonian(const MassProfile& profile, const GridFunction& v,
                               const GridFunction& f);

enum class ReductionType { TypeI, TypeII };

struct ReductionResult {
  FirstOrderSuperpotential w1;
  FirstOrderSuperpotential w2;
  double k1 = 0.0;
  double k2 = 0.0;
  ReductionType type = ReductionType::TypeI;
};

// Reduction of the SI second-order scheme (W_m = g/sqrt m). The formulas
// divide by W_m, so the grid must avoid the node of g: SuperpotentialNode
// (with the node location) otherwise. Real K3 >= 0 only.
ReductionResult reduce_type1(const MassProfile& profile, const SIParams& params,
                             const Grid& grid);
ReductionResult reduce_type2(const MassProfile& profile, const SIParams& params,
                             const Grid& grid);

struct ReducedPartners {
  GridFunction v_plus_1;   // W1^2 - (W1/sqrt m)' + K1
  GridFunction v_minus_2;  // W2^2 + W2'/sqrt m - W2 (1/sqrt m)' - (1/sqrt m)(1/sqrt m)'' + K2
};
ReducedPartners reduced_partners(const ReductionResult& red, const MassProfile& profile);

// Ground states of the two reduced first-order pairs (Type II):
//   phi0^{+(1)} ~ e^{-int F2}/sqrt(W_m),  phi0^{-(1)} = psi^-_{0,2},
//   phi0^{-(2)} ~ e^{+int F2}/sqrt(W_m),  phi0^{+(2)} = psi^+_{0,2}.
// Each is scaled to max-norm 1. Same node restriction as the reductions.
struct ReducedZeroModes {
  GridFunction plus_1;
  GridFunction minus_1;
  GridFunction plus_2;
  GridFunction minus_2;
};
ReducedZeroModes reduced_zero_modes(const MassProfile& profile, const SIParams& params,
                                    const Grid& grid);

// W2(x; a) = g/2 - m'/(4 m^{3/2}) + (a - lambda)/(2g): the Type II W2 with
// K3 replaced by the first-order SI parameter a. Needs a node-free grid
// unless a == lambda.
FirstOrderSuperpotential reduced_superpotential(const MassProfile& profile,
                                                const SIParams& params, double a,
                                                const Grid& grid);

struct ReducedStep {
  double a;        // a_k
  double r;        // R(a_k) = 2 lambda - a_k
  double epsilon;  // sum_{i=1..k} R(a_i), epsilon_0 = 0
};

// a_0 = K3, a_k = 2 lambda - a_{k-1}; returns k = 0 .. n_levels-1.
std::vector<ReducedStep> reduced_si_recursion(const SIParams& params, int n_levels);

}  // namespace ssusy::susy1
