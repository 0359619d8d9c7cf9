#include "ssusy/susy1.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ssusy/errors.hpp"
#include "ssusy/mass.hpp"
#include "ssusy/numerics.hpp"

namespace ssusy::susy1 {

namespace {

void require_same_grid(const GridFunction& a, const GridFunction& b) {
  if (!(a.grid() == b.grid())) {
    throw Error(ErrorCode::InvalidInput, "operands live on different grids");
  }
}

// exp(values - max(values)), the shift keeps the largest sample at 1.
std::vector<double> exp_shifted(std::vector<double> log_values) {
  const double top = *std::max_element(log_values.begin(), log_values.end());
  for (double& v : log_values) v = std::exp(v - top);
  return log_values;
}

void require_node_free(const MassProfile& profile, const SIParams& params,
                       const Grid& grid) {
  if (auto node = mass::find_g_node_in(profile, params, grid.x0, grid.back())) {
    std::ostringstream os;
    os << "superpotential W_m vanishes at x = " << *node << " inside the grid";
    throw Error(ErrorCode::SuperpotentialNode, os.str(), *node);
  }
}

}  // namespace

bool decays_at_both_ends(const GridFunction& psi, double threshold) {
  if (!psi.all_finite()) return false;
  double peak = 0.0;
  for (double v : psi.values()) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return false;
  return std::abs(psi[0]) < threshold * peak &&
         std::abs(psi[psi.size() - 1]) < threshold * peak;
}

PartnerPair partner_potentials_1(const FirstOrderSuperpotential& w,
                                 const MassProfile& profile) {
  const GridFunction& wf = w.w;
  for (std::size_t i = 0; i < wf.size(); ++i) {
    if (!std::isfinite(wf[i])) {
      throw Error(ErrorCode::NodeInDomain, "superpotential is not finite on the grid",
                  wf.x(i));
    }
  }
  const auto dw = num::d1(wf.values(), wf.h());
  std::vector<double> vp(wf.size()), vm(wf.size());
  for (std::size_t i = 0; i < wf.size(); ++i) {
    const auto r = mass::inv_sqrt_mass(profile, wf.x(i));
    vp[i] = wf[i] * wf[i] - (dw[i] * r.value + wf[i] * r.d1);
    vm[i] = vp[i] + 2.0 * dw[i] * r.value - r.value * r.d2;
  }
  return {GridFunction(wf.grid(), std::move(vp)), GridFunction(wf.grid(), std::move(vm))};
}

GroundStates ground_states_1(const FirstOrderSuperpotential& w, const MassProfile& profile) {
  const GridFunction& wf = w.w;
  const std::size_t n = wf.size();
  std::vector<double> integrand(n);
  for (std::size_t i = 0; i < n; ++i) {
    integrand[i] = mass::eval(profile, wf.x(i)).sqrt_m * wf[i];
  }
  const auto integral = num::cumulative_trapezoid(integrand, wf.h(), n / 2);
  std::vector<double> log_plus(n), log_minus(n);
  for (std::size_t i = 0; i < n; ++i) {
    log_plus[i] = -integral[i];
    log_minus[i] = std::log(mass::eval(profile, wf.x(i)).sqrt_m) + integral[i];
  }
  GroundStates out{GridFunction(wf.grid(), exp_shifted(std::move(log_plus))),
                   GridFunction(wf.grid(), exp_shifted(std::move(log_minus)))};
  out.plus_normalizable = decays_at_both_ends(out.psi_plus);
  out.minus_normalizable = decays_at_both_ends(out.psi_minus);
  return out;
}

GridFunction apply_A(const GridFunction& w, const MassProfile& profile,
                     const GridFunction& f) {
  require_same_grid(w, f);
  const auto df = num::d1(f.values(), f.h());
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[i] = mass::inv_sqrt_mass(profile, f.x(i)).value * df[i] + w[i] * f[i];
  }
  return {f.grid(), std::move(out)};
}

GridFunction apply_A_dagger(const GridFunction& w, const MassProfile& profile,
                            const GridFunction& f) {
  require_same_grid(w, f);
  const auto df = num::d1(f.values(), f.h());
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto r = mass::inv_sqrt_mass(profile, f.x(i));
    out[i] = -r.value * df[i] + (w[i] - r.d1) * f[i];
  }
  return {f.grid(), std::move(out)};
}

GridFunction apply_hamiltonian(const MassProfile& profile, const GridFunction& v,
                               const GridFunction& f) {
  require_same_grid(v, f);
  const auto df = num::d1(f.values(), f.h());
  const auto d2f = num::d2(f.values(), f.h());
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto e = mass::eval(profile, f.x(i));
    out[i] = -d2f[i] / e.m + e.dm / (e.m * e.m) * df[i] + v[i] * f[i];
  }
  return {f.grid(), std::move(out)};
}

namespace {

ReductionResult reduce(const MassProfile& profile, const SIParams& params, const Grid& grid,
                       ReductionType type) {
  if (!(params.k3 >= 0.0)) {
    throw Error(ErrorCode::InvalidInput, "reduction requires real K3 >= 0");
  }
  require_node_free(profile, params, grid);
  const double k3 = params.k3;
  std::vector<double> w1(grid.n), w2(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    const auto e = mass::eval(profile, x);
    const auto r = mass::inv_sqrt_mass(profile, x);
    const auto wm = mass::si_superpotential(profile, params, x);
    const double s = e.sqrt_m;
    double common = 0.5 * wm.wm * s + 0.5 * r.d1;
    double split = 0.0;
    if (type == ReductionType::TypeI) {
      split = (wm.dwm + k3) / (2.0 * wm.wm * s) - 0.5 * r.d1;
    } else {
      common += k3 / (2.0 * wm.wm * s);
      split = wm.dwm / (2.0 * wm.wm * s) - 0.5 * r.d1;
    }
    w1[i] = common + split;
    w2[i] = common - split;
  }
  ReductionResult red;
  red.type = type;
  red.k1 = -(k3 + params.l1) / 2.0;
  if (type == ReductionType::TypeI) {
    red.k2 = (k3 - params.l1) / 2.0;
    red.w1 = {GridFunction(grid, std::move(w1)), SuperpotentialLabel::TypeI_W1};
    red.w2 = {GridFunction(grid, std::move(w2)), SuperpotentialLabel::TypeI_W2};
  } else {
    red.k2 = red.k1;
    red.w1 = {GridFunction(grid, std::move(w1)), SuperpotentialLabel::TypeII_W1};
    red.w2 = {GridFunction(grid, std::move(w2)), SuperpotentialLabel::TypeII_W2};
  }
  return red;
}

}  // namespace

ReductionResult reduce_type1(const MassProfile& profile, const SIParams& params,
                             const Grid& grid) {
  return reduce(profile, params, grid, ReductionType::TypeI);
}

ReductionResult reduce_type2(const MassProfile& profile, const SIParams& params,
                             const Grid& grid) {
  return reduce(profile, params, grid, ReductionType::TypeII);
}

ReducedPartners reduced_partners(const ReductionResult& red, const MassProfile& profile) {
  const GridFunction& w1 = red.w1.w;
  const GridFunction& w2 = red.w2.w;
  require_same_grid(w1, w2);
  const auto dw1 = num::d1(w1.values(), w1.h());
  const auto dw2 = num::d1(w2.values(), w2.h());
  std::vector<double> vp(w1.size()), vm(w2.size());
  for (std::size_t i = 0; i < w1.size(); ++i) {
    const auto r = mass::inv_sqrt_mass(profile, w1.x(i));
    vp[i] = w1[i] * w1[i] - (dw1[i] * r.value + w1[i] * r.d1) + red.k1;
    vm[i] = w2[i] * w2[i] + dw2[i] * r.value - w2[i] * r.d1 - r.value * r.d2 + red.k2;
  }
  return {GridFunction(w1.grid(), std::move(vp)), GridFunction(w2.grid(), std::move(vm))};
}

ReducedZeroModes reduced_zero_modes(const MassProfile& profile, const SIParams& params,
                                    const Grid& grid) {
  require_node_free(profile, params, grid);
  auto f2 = [&](double x) {
    const double m = mass::eval(profile, x).m;
    const double wm = mass::si_superpotential(profile, params, x).wm;
    return (m * wm * wm + params.k3) / (2.0 * wm);
  };
  const auto integral = num::cumulative_gauss(f2, grid, grid.n / 2);
  std::vector<double> lp1(grid.n), lm1(grid.n), lp2(grid.n), lm2(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    const double m = mass::eval(profile, x).m;
    const double awm = std::abs(mass::si_superpotential(profile, params, x).wm);
    // On the g < 0 side sqrt(m W_m) is i sqrt(|m W_m|); the constant phase drops.
    lp1[i] = -integral[i] - 0.5 * std::log(awm);
    lm2[i] = integral[i] - 0.5 * std::log(awm);
    lp2[i] = 0.5 * std::log(m * awm) - integral[i];
    lm1[i] = 0.5 * std::log(m * awm) + integral[i];
  }
  return {GridFunction(grid, exp_shifted(std::move(lp1))),
          GridFunction(grid, exp_shifted(std::move(lm1))),
          GridFunction(grid, exp_shifted(std::move(lp2))),
          GridFunction(grid, exp_shifted(std::move(lm2)))};
}

FirstOrderSuperpotential reduced_superpotential(const MassProfile& profile,
                                                const SIParams& params, double a,
                                                const Grid& grid) {
  // For a == lambda the 1/g term is absent and a node of g is harmless.
  const bool pole = a != params.lambda;
  if (pole) require_node_free(profile, params, grid);
  auto w = GridFunction::sample(grid, [&](double x) {
    const auto e = mass::eval(profile, x);
    const double g = mass::g_function(profile, params, x);
    const double tail = pole ? (a - params.lambda) / (2.0 * g) : 0.0;
    return 0.5 * g - e.dm / (4.0 * e.m * e.sqrt_m) + tail;
  });
  return {std::move(w), SuperpotentialLabel::TypeII_W2};
}

std::vector<ReducedStep> reduced_si_recursion(const SIParams& params, int n_levels) {
  if (!(params.lambda > 0.0)) {
    throw Error(ErrorCode::InvalidInput, "λ must be > 0");
  }
  std::vector<ReducedStep> out;
  if (n_levels <= 0) return out;
  out.reserve(static_cast<std::size_t>(n_levels));
  double a = params.k3;
  double eps = 0.0;
  out.push_back({a, 2.0 * params.lambda - a, eps});
  for (int k = 1; k < n_levels; ++k) {
    a = 2.0 * params.lambda - a;
    const double r = 2.0 * params.lambda - a;
    eps += r;
    out.push_back({a, r, eps});
  }
  return out;
}

}  // namespace ssusy::susy1
