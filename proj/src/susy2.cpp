#include "ssusy/susy2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ssusy/errors.hpp"
#include "ssusy/mass.hpp"
#include "ssusy/numerics.hpp"
#include "ssusy/susy1.hpp"

namespace ssusy::susy2 {

namespace {

void require_scheme_grid(const SecondOrderScheme& s, const GridFunction& f) {
  if (!(s.grid() == f.grid())) {
    throw Error(ErrorCode::InvalidInput, "grid function does not live on the scheme grid");
  }
}

GridFunction sample_v(const SecondOrderScheme& s, bool plus) {
  return GridFunction::sample(s.grid(), [&](double x) {
    const SchemePoint p = s.at(x);
    return plus ? p.v_plus : p.v_minus;
  });
}

}  // namespace

SecondOrderScheme::SecondOrderScheme(MassProfile profile, SIParams params, Grid grid)
    : profile_(profile), params_(params), grid_(grid) {
  if (grid_.n < GridFunction::kMinPoints) {
    throw Error(ErrorCode::GridTooSmall, "scheme grid needs at least 5 points");
  }
  node_ = mass::find_g_node_in(profile_, params_, grid_.x0, grid_.back());
  v_plus_ = sample_v(*this, true);
  v_minus_ = sample_v(*this, false);
}

double SecondOrderScheme::wm(double x) const {
  return mass::si_superpotential(profile_, params_, x).wm;
}

double SecondOrderScheme::w(double x) const {
  const auto e = mass::eval(profile_, x);
  return wm(x) - e.dm / (e.m * e.m);
}

double SecondOrderScheme::c(double x) const {
  const auto e = mass::eval(profile_, x);
  const double lam = params_.lambda;
  const double g = mass::g_function(profile_, params_, x);
  const double s = e.sqrt_m, ds = e.d_sqrt_m, d2s = e.d2_sqrt_m;
  double out = 0.5 * lam + 0.25 * g * g - g * ds / (2.0 * s * s) - d2s / (2.0 * s * s * s) +
               1.25 * ds * ds / (s * s * s * s);
  const double split = lam * lam - params_.k3 * params_.k3;
  if (split != 0.0) out += split / (4.0 * g * g);
  return out;
}

double SecondOrderScheme::c_generic(double x) const {
  const auto e = mass::eval(profile_, x);
  const auto w = mass::si_superpotential(profile_, params_, x);
  const double m = e.m;
  const double q = w.dwm / (2.0 * w.wm);
  const double k = params_.k3 / (2.0 * w.wm);
  return 0.5 * w.dwm + 0.25 * m * w.wm * w.wm - w.d2wm / (2.0 * m * w.wm) + q * q / m +
         0.75 * e.dm * e.dm / (m * m * m) - 0.5 * e.d2m / (m * m) - k * k / m;
}

SchemePoint SecondOrderScheme::at(double x) const {
  const auto e = mass::eval(profile_, x);
  const auto w = mass::si_superpotential(profile_, params_, x);
  SchemePoint p{};
  p.m = e.m;
  p.dm = e.dm;
  p.wm = w.wm;
  p.dwm = w.dwm;
  p.d2wm = w.d2wm;
  p.w = w.wm - e.dm / (e.m * e.m);
  p.c = c(x);
  const double common = 0.5 * e.m * w.wm * w.wm - p.c - 0.5 * params_.l1;
  const double drift = e.dm / (2.0 * e.m) * w.wm;
  p.v_plus = -0.5 * w.dwm - drift + common;
  p.v_minus = 1.5 * w.dwm + drift + common;
  return p;
}

SecondOrderScheme build_scheme(const MassProfile& profile, const SIParams& params,
                               const Grid& grid, NodePolicy policy) {
  SecondOrderScheme scheme(profile, params, grid);
  if (policy == NodePolicy::Strict && scheme.node() && params.lambda != params.k3) {
    std::ostringstream os;
    os << "g vanishes at x = " << *scheme.node() << " inside the grid";
    throw Error(ErrorCode::SuperpotentialNode, os.str(), *scheme.node());
  }
  return scheme;
}

GridFunction apply_A(const SecondOrderScheme& scheme, const GridFunction& f) {
  require_scheme_grid(scheme, f);
  const auto df = num::d1(f.values(), f.h());
  const auto d2f = num::d2(f.values(), f.h());
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const SchemePoint p = scheme.at(f.x(i));
    out[i] = d2f[i] / p.m + p.w * df[i] + p.c * f[i];
  }
  return {f.grid(), std::move(out)};
}

GridFunction apply_A_dagger(const SecondOrderScheme& scheme, const GridFunction& f) {
  require_scheme_grid(scheme, f);
  const auto df = num::d1(f.values(), f.h());
  const auto d2f = num::d2(f.values(), f.h());
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const SchemePoint p = scheme.at(f.x(i));
    out[i] = d2f[i] / p.m - (p.w + 2.0 * p.dm / (p.m * p.m)) * df[i] + (p.c - p.dwm) * f[i];
  }
  return {f.grid(), std::move(out)};
}

namespace {

GridFunction apply_h(const SecondOrderScheme& scheme, const GridFunction& v,
                     const GridFunction& f) {
  require_scheme_grid(scheme, f);
  const auto df = num::d1(f.values(), f.h());
  const auto d2f = num::d2(f.values(), f.h());
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto e = mass::eval(scheme.profile(), f.x(i));
    out[i] = -d2f[i] / e.m + e.dm / (e.m * e.m) * df[i] + v[i] * f[i];
  }
  return {f.grid(), std::move(out)};
}

}  // namespace

GridFunction apply_h_plus(const SecondOrderScheme& scheme, const GridFunction& f) {
  return apply_h(scheme, scheme.v_plus(), f);
}

GridFunction apply_h_minus(const SecondOrderScheme& scheme, const GridFunction& f) {
  return apply_h(scheme, scheme.v_minus(), f);
}

double eta(const SIParams& params, int j) {
  const double sign = (j % 2 == 0) ? 1.0 : -1.0;
  return -(params.l1 + sign * params.k3) / 2.0;
}

double zero_mode_flux(const SecondOrderScheme& scheme, int j, double x) {
  const double sign = (j % 2 == 0) ? 1.0 : -1.0;
  const double m = mass::eval(scheme.profile(), x).m;
  const double wm = scheme.wm(x);
  return (m * wm * wm + sign * scheme.params().k3) / (2.0 * wm);
}

namespace {

// sqrt(s) * |g|^p * exp(-sector Q) with Q = int g s / 2, rescaled so that the
// largest finite sample has modulus 1.
GridFunction zero_mode(const SecondOrderScheme& scheme, const std::vector<double>& q,
                       double p, int sector) {
  const Grid& grid = scheme.grid();
  std::vector<double> logmag(grid.n), sign(grid.n, 1.0);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    const double s = mass::eval(scheme.profile(), x).sqrt_m;
    const double g = mass::g_function(scheme.profile(), scheme.params(), x);
    const double gp = num::signed_pow(g, p);
    sign[i] = gp < 0.0 ? -1.0 : 1.0;
    logmag[i] = 0.5 * std::log(s) + std::log(std::abs(gp)) - sector * q[i];
    if (std::isfinite(logmag[i])) top = std::max(top, logmag[i]);
  }
  std::vector<double> values(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) values[i] = sign[i] * std::exp(logmag[i] - top);
  return {grid, std::move(values)};
}

GridFunction scaled(const GridFunction& f, double factor) {
  std::vector<double> v = f.values();
  for (double& x : v) x *= factor;
  return {f.grid(), std::move(v)};
}

}  // namespace

ZeroModes zero_modes(const SecondOrderScheme& scheme) {
  const Grid& grid = scheme.grid();
  const SIParams& par = scheme.params();
  const auto q = num::cumulative_gauss(
      [&](double x) {
        const double s = mass::eval(scheme.profile(), x).sqrt_m;
        return 0.5 * mass::g_function(scheme.profile(), par, x) * s;
      },
      grid, grid.n / 2);

  ZeroModes out;
  for (int j = 1; j <= 2; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    const double log_coeff = sign * par.k3 / (2.0 * par.lambda);
    const std::size_t k = static_cast<std::size_t>(j - 1);
    for (int sector : {+1, -1}) {
      const double p = 0.5 - sector * log_coeff;
      GridFunction psi = zero_mode(scheme, q, p, sector);
      const bool integrable = !scheme.node() || p > -0.5;
      const bool normalizable = integrable && susy1::decays_at_both_ends(psi);
      if (normalizable) psi = scaled(psi, 1.0 / num::l2_norm(psi));
      if (sector > 0) {
        out.plus[k] = std::move(psi);
        out.plus_normalizable[k] = normalizable;
        out.plus_exponent[k] = p;
      } else {
        out.minus[k] = std::move(psi);
        out.minus_normalizable[k] = normalizable;
        out.minus_exponent[k] = p;
      }
    }
  }
  return out;
}

double formal_eigencheck(const SecondOrderScheme& scheme, int j) {
  const ZeroModes zm = zero_modes(scheme);
  const GridFunction& psi = zm.plus[static_cast<std::size_t>(j - 1)];
  const GridFunction hpsi = apply_h_plus(scheme, psi);
  const double e = eta(scheme.params(), j);
  std::vector<double> target(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) target[i] = e * psi[i];
  double num_sq = 0.0, den_sq = 0.0;
  for (std::size_t i = num::kTrim; i + num::kTrim < psi.size(); ++i) {
    num_sq += (hpsi[i] - target[i]) * (hpsi[i] - target[i]);
    den_sq += psi[i] * psi[i];
  }
  return std::sqrt(num_sq / den_sq);
}

IdentityResidual identity_residual(const SecondOrderScheme& scheme, const GridFunction& f) {
  const SIParams& par = scheme.params();
  const GridFunction af = apply_A(scheme, f);
  const GridFunction adaf = apply_A_dagger(scheme, af);
  const GridFunction hf = apply_h_plus(scheme, f);
  const GridFunction hhf = apply_h_plus(scheme, hf);
  const GridFunction ahf = apply_A(scheme, hf);
  const GridFunction haf = apply_h_minus(scheme, af);
  const double l2 = par.l2();
  double plus_sq = 0.0, minus_sq = 0.0, f_sq = 0.0;
  for (std::size_t i = num::kTrim; i + num::kTrim < f.size(); ++i) {
    const double quad = hhf[i] + par.l1 * hf[i] + l2 * f[i];
    plus_sq += (adaf[i] - quad) * (adaf[i] - quad);
    minus_sq += (ahf[i] - haf[i]) * (ahf[i] - haf[i]);
    f_sq += f[i] * f[i];
  }
  if (f_sq == 0.0) return {0.0, 0.0};
  return {std::sqrt(plus_sq / f_sq), std::sqrt(minus_sq / f_sq)};
}

GridFunction to_constant_mass_form(const SecondOrderScheme& scheme, const GridFunction& psi,
                                   int sector_sign) {
  require_scheme_grid(scheme, psi);
  const Grid& grid = scheme.grid();
  const auto half = num::cumulative_gauss(
      [&](double x) {
        const double s = mass::eval(scheme.profile(), x).sqrt_m;
        // m W_m = g sqrt(m)
        return 0.5 * mass::g_function(scheme.profile(), scheme.params(), x) * s;
      },
      grid, grid.n / 2);
  std::vector<double> phi(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double s = mass::eval(scheme.profile(), grid.x(i)).sqrt_m;
    phi[i] = psi[i] / s * std::exp(sector_sign * half[i]);
  }
  return {grid, std::move(phi)};
}

double constant_mass_form_residual(const SecondOrderScheme& scheme, const GridFunction& phi,
                                   int sigma) {
  require_scheme_grid(scheme, phi);
  const auto d2phi = num::d2(phi.values(), phi.h());
  const double k3 = scheme.params().k3;
  double scale_sq = 0.0, res_sq = 0.0;
  for (std::size_t i = num::kTrim; i + num::kTrim < phi.size(); ++i) {
    const auto w = mass::si_superpotential(scheme.profile(), scheme.params(), phi.x(i));
    const double u = (w.dwm + sigma * k3) / (2.0 * w.wm);
    const double du = w.d2wm / (2.0 * w.wm) - (w.dwm + sigma * k3) * w.dwm / (2.0 * w.wm * w.wm);
    const double r = -d2phi[i] + (u * u + du) * phi[i];
    res_sq += r * r;
    scale_sq += phi[i] * phi[i];
  }
  return std::sqrt(res_sq / scale_sq);
}

}  // namespace ssusy::susy2
