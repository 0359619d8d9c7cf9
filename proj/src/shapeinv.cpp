#include "ssusy/shapeinv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ssusy/errors.hpp"
#include "ssusy/mass.hpp"
#include "ssusy/numerics.hpp"

namespace ssusy::shapeinv {

namespace {

// -(lambda^2 - K3^2)/(4 g^2), exactly zero for lambda == K3 (also at g = 0).
double inverse_square_term(const SIParams& p, double g) {
  const double split = p.lambda * p.lambda - p.k3 * p.k3;
  if (split == 0.0) return 0.0;
  if (g == 0.0) return split > 0.0 ? -std::numeric_limits<double>::infinity()
                                   : std::numeric_limits<double>::infinity();
  return -split / (4.0 * g * g);
}

SingularityReport make_report(const MassProfile& profile, const SIParams& params,
                              std::optional<double> node) {
  SingularityReport r;
  r.node = node;
  if (!node) return r;
  const double ratio = params.k3 / params.lambda;
  const double c = (ratio * ratio - 1.0) / (4.0 * mass::eval(profile, *node).m);
  r.strength = c;
  if (params.lambda == params.k3 || c == 0.0) {
    r.classification = SingularityClass::NonSingular;
    r.admissible = true;
  } else {
    r.classification = c < 0.0 ? SingularityClass::Attractive : SingularityClass::Repulsive;
    r.admissible = c > -0.25 && c < 0.75;
  }
  return r;
}

}  // namespace

double si_potential_at(const MassProfile& profile, const SIParams& params, double x) {
  const auto e = mass::eval(profile, x);
  const double g = params.gamma + params.lambda * e.int_sqrt_m;
  const double m2 = e.m * e.m;
  return 0.25 * g * g + inverse_square_term(params, g) + e.d2m / (4.0 * m2) -
         (7.0 / 16.0) * e.dm * e.dm / (m2 * e.m) - (params.lambda + 0.5 * params.l1);
}

GridFunction si_potential(const MassProfile& profile, const SIParams& params,
                          const Grid& grid) {
  return GridFunction::sample(grid, [&](double x) { return si_potential_at(profile, params, x); });
}

double si_potential_specialized(const MassProfile& profile, const SIParams& params,
                                double x) {
  const double shift = -(params.lambda + 0.5 * params.l1);
  switch (profile.kind()) {
    case MassKind::Constant: {
      // g = gamma + lambda sqrt(m0) x; no mass-derivative terms.
      const double g = params.gamma + params.lambda * std::sqrt(profile.m0()) * x;
      return 0.25 * g * g + inverse_square_term(params, g) + shift;
    }
    case MassKind::Hyperbolic: {
      const double a = profile.alpha(), b = profile.beta();
      const double t = std::tanh(x);
      const double sech2 = 1.0 / (std::cosh(x) * std::cosh(x));
      const double ax = std::abs(x);
      const double log_cosh = ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
      const double g = params.gamma + params.lambda * (a * x + b * log_cosh);
      const double s = a + b * t;
      const double mass_term =
          b * sech2 * (b * t * t - 4.0 * a * t - 5.0 * b) / (4.0 * s * s * s * s);
      return 0.25 * g * g + inverse_square_term(params, g) + shift + mass_term;
    }
    case MassKind::Algebraic: {
      const double a = profile.alpha();
      const double g = params.gamma + params.lambda * (x + (a - 1.0) * std::atan(x));
      const double q = a + x * x;
      const double mass_term = (a - 1.0) * (3.0 * x * x - 1.0) / (q * q * q) -
                               5.0 * (a - 1.0) * (a - 1.0) * x * x / (q * q * q * q);
      return 0.25 * g * g + inverse_square_term(params, g) + shift + mass_term;
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double cm_limit_potential_at(const SIParams& params, double x) {
  const double g = params.gamma + params.lambda * x;
  return 0.25 * g * g + inverse_square_term(params, g) - (params.lambda + 0.5 * params.l1);
}

GridFunction cm_limit_potential(const SIParams& params, const Grid& grid) {
  return GridFunction::sample(grid, [&](double x) { return cm_limit_potential_at(params, x); });
}

Regime classify_regime(const SIParams& params) {
  const double lam = params.lambda;
  const double k3 = params.k3;
  if (!(lam > 0.0)) throw Error(ErrorCode::InvalidInput, "λ must be > 0");
  if (k3 <= 0.0) return {RegimeKind::Large, 0};
  const double ratio = k3 / (2.0 * lam);  // lambda = K3/(2 kappa) <=> ratio = kappa
  const double nearest = std::round(ratio);
  if (nearest >= 1.0 && std::abs(lam * 2.0 * nearest - k3) <= kRegimeTieTolerance * k3) {
    return {RegimeKind::Boundary, static_cast<int>(nearest)};
  }
  if (ratio < 1.0) return {RegimeKind::Large, 0};
  return {RegimeKind::Interior, static_cast<int>(std::floor(ratio))};
}

SingularityReport singularity(const MassProfile& profile, const SIParams& params,
                              double search_half_width) {
  return make_report(profile, params,
                     mass::find_g_node(profile, params, search_half_width));
}

SingularityReport singularity(const SIModel& model) { return model.singularity; }

SIModel build_model(const MassProfile& profile, const SIParams& params, const Grid& grid) {
  auto scheme = susy2::build_scheme(profile, params, grid);
  auto report = make_report(profile, params, scheme.node());
  return {std::move(scheme), si_potential(profile, params, grid), report,
          classify_regime(params)};
}

std::vector<double> ladder_polynomial(const SIParams& params, Branch branch, int power) {
  if (power < 0) throw Error(ErrorCode::InvalidInput, "ladder power must be >= 0");
  const double lam = params.lambda;
  const double sk = (branch == Branch::J2 ? 1.0 : -1.0) * params.k3;
  std::vector<double> c{1.0};
  for (int step = 0; step < power; ++step) {
    const std::size_t deg = c.size() + 1;  // degree grows by two
    std::vector<double> next(deg + 1, 0.0), scale(deg + 1, 0.0);
    auto coef = [&](std::size_t k) { return k < c.size() ? c[k] : 0.0; };
    for (std::size_t k = 0; k <= deg; ++k) {
      const double kk = static_cast<double>(k);
      const double terms[] = {
          lam * lam * (kk + 2.0) * (kk + 1.0) * coef(k + 2),
          lam * (lam - sk) * (kk + 2.0) * coef(k + 2),
          -2.0 * lam * kk * coef(k),
          k >= 2 ? coef(k - 2) : 0.0,
          (sk - 2.0 * lam) * coef(k),
      };
      for (double t : terms) {
        next[k] += t;
        scale[k] += std::abs(t);
      }
    }
    // Cancellations (boundary regime) leave rounding noise; snap it to zero.
    for (std::size_t k = 0; k <= deg; ++k) {
      if (std::abs(next[k]) <= 1e-10 * scale[k]) next[k] = 0.0;
    }
    c = std::move(next);
  }
  return c;
}

double node_exponent(const SIParams& params, Branch branch, int power) {
  const double base = branch == Branch::J2 ? (params.lambda - params.k3) / (2.0 * params.lambda)
                                           : (params.lambda + params.k3) / (2.0 * params.lambda);
  const auto c = ladder_polynomial(params, branch, power);
  std::size_t lowest = 0;
  while (lowest < c.size() && c[lowest] == 0.0) ++lowest;
  return base + static_cast<double>(lowest);
}

std::vector<SpectrumEntry> spectrum(const SIParams& params, int n_max, bool has_node) {
  const Regime regime = classify_regime(params);
  const double lam = params.lambda;
  const double e1 = params.eta1(), e2 = params.eta2();
  std::vector<SpectrumEntry> out;
  for (int n = 0; n <= n_max; ++n) {
    SpectrumEntry e;
    e.n = n;
    if (params.k3 == 0.0) {
      // F1 == F2: a single zero mode.
      e = {n, e2 + 2.0 * n * lam, Branch::J2, n, true};
    } else if (regime.kind == RegimeKind::Large) {
      if (n % 2 == 0) e = {n, e2 + n * lam, Branch::J2, n / 2, true};
      else e = {n, e1 + (n - 1) * lam, Branch::J1, (n - 1) / 2, true};
    } else if (regime.kind == RegimeKind::Interior) {
      const int kappa = regime.kappa;
      if (n <= kappa) e = {n, e2 + 2.0 * n * lam, Branch::J2, n, true};
      else if ((n - kappa) % 2 == 0) e = {n, e2 + (n + kappa) * lam, Branch::J2, (n + kappa) / 2, true};
      else e = {n, e1 + (n - kappa - 1) * lam, Branch::J1, (n - kappa - 1) / 2, true};
    } else {
      e = {n, e2 + n * params.k3 / regime.kappa, Branch::J2, n, true};
    }
    if (has_node && lam != params.k3) {
      e.regular = node_exponent(params, e.branch, e.ladder_power) >= 0.0;
    }
    out.push_back(e);
  }
  return out;
}

std::vector<SpectrumEntry> spectrum(const SIModel& model, int n_max) {
  return spectrum(model.scheme.params(), n_max, model.singularity.node.has_value());
}

std::vector<SpectrumEntry> friedrichs_selection(const SIParams& params,
                                                std::vector<SpectrumEntry> entries,
                                                bool has_node) {
  if (!has_node || params.lambda == params.k3) return entries;
  for (auto& e : entries) {
    e.regular = e.regular && node_exponent(params, e.branch, e.ladder_power) > 0.5;
  }
  return entries;
}

GridFunction ladder_closed_form(const MassProfile& profile, const SIParams& params,
                                const SpectrumEntry& entry, const Grid& grid) {
  const auto poly = ladder_polynomial(params, entry.branch, entry.ladder_power);
  const double p = entry.branch == Branch::J2 ? (params.lambda - params.k3) / (2.0 * params.lambda)
                                              : (params.lambda + params.k3) / (2.0 * params.lambda);
  auto f = GridFunction::sample(grid, [&](double x) {
    const auto e = mass::eval(profile, x);
    const double g = params.gamma + params.lambda * e.int_sqrt_m;
    double pg = 0.0;
    for (std::size_t k = poly.size(); k-- > 0;) pg = pg * g + poly[k];
    return pg * num::signed_pow(g, p) * std::sqrt(e.sqrt_m) *
           std::exp(-g * g / (4.0 * params.lambda));
  });
  if (!f.all_finite()) return f;
  const double norm = num::l2_norm(f);
  if (norm == 0.0) return f;
  std::vector<double> v = f.values();
  for (double& x : v) x /= norm;
  return {grid, std::move(v)};
}

GridFunction ladder_state(const SIModel& model, const SpectrumEntry& entry) {
  const GridFunction& v = model.v_si;
  const std::size_t n = v.size();
  std::size_t first = n, last = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] <= entry.energy) {
      first = std::min(first, i);
      last = std::max(last, i);
    }
  }
  if (first < n && (first < kTurningMargin || last + kTurningMargin >= n)) {
    throw Error(ErrorCode::UnderResolved,
                "classically allowed region of level " + std::to_string(entry.n) +
                    " reaches the grid boundary",
                first < kTurningMargin ? v.x(first) : v.x(last));
  }
  const auto zm = susy2::zero_modes(model.scheme);
  GridFunction psi = zm.plus[entry.branch == Branch::J1 ? 0 : 1];
  for (int k = 0; k < entry.ladder_power; ++k) {
    psi = susy2::apply_A_dagger(model.scheme, psi);
    const double norm = num::l2_norm(psi);
    std::vector<double> vals = psi.values();
    for (double& x : vals) x /= norm;
    psi = GridFunction(psi.grid(), std::move(vals));
  }
  const double norm = num::l2_norm(psi);
  std::vector<double> vals = psi.values();
  for (double& x : vals) x /= norm;
  return {psi.grid(), std::move(vals)};
}

}  // namespace ssusy::shapeinv
