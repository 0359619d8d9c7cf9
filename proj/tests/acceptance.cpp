// Acceptance run: one PASS/FAIL line per criterion.
// Usage: acceptance [--expect-fail N]...
// Exit status 0 iff the set of failing criteria equals the expected set.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "ssusy/cli.hpp"
#include "ssusy/errors.hpp"
#include "ssusy/mass.hpp"
#include "ssusy/numerics.hpp"
#include "ssusy/shapeinv.hpp"
#include "ssusy/susy1.hpp"
#include "ssusy/susy2.hpp"
#include "ssusy/verify.hpp"

using namespace ssusy;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

GridFunction axpy(const GridFunction& a, double k, const GridFunction& b) {
  std::vector<double> v = a.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += k * b[i];
  return {a.grid(), std::move(v)};
}

double trimmed_rel(const GridFunction& r, const GridFunction& f) {
  return num::l2_norm(r, num::kTrim) / num::l2_norm(f, num::kTrim);
}

// Oracle grid used by the CLI: one-sided to the right of a singular node.
Grid oracle_grid(const cli::RunConfig& c) {
  const auto rep = shapeinv::singularity(c.profile, c.params, c.grid.L);
  if (rep.classification != SingularityClass::NonSingular) {
    return verify::one_sided_grid(*rep.node, c.grid.L, c.grid.N, verify::Side::Right);
  }
  return verify::interior_grid(-c.grid.L, c.grid.L, c.grid.N);
}

std::vector<verify::Eigenpair> oracle(const MassProfile& p, const SIParams& s, const Grid& g, int k) {
  return verify::lowest_eigenpairs(verify::discretize(p, shapeinv::si_potential(p, s, g)), k);
}

Outcome c1() {
  const auto p = MassProfile::hyperbolic(2, 1);
  const auto s = testing::fig1_params();
  const auto t0 = std::chrono::steady_clock::now();
  const auto e = oracle(p, s, verify::interior_grid(-12, 12, 6000), 5);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto pred = shapeinv::spectrum(s, 4, true);
  const double target[] = {-4.5, -0.5, 3.5, 7.5, 11.5};
  double worst = 0.0;
  bool ok = secs < 10.0;
  for (int n = 0; n < 5; ++n) {
    ok = ok && pred[n].energy == target[n];
    worst = std::max(worst, std::abs(e[n].energy - target[n]));
  }
  ok = ok && worst < 2e-3;
  return {ok, fmt("alpha=2, max |dE| = %.2e, oracle %.3f s", worst, secs)};
}

Outcome c2() {
  const auto r = shapeinv::singularity(MassProfile::hyperbolic(2, 1), testing::fig3_params(), 5);
  if (!r.node || !r.strength) return {false, "no node found"};
  const bool ok = std::abs(*r.node + 0.09) <= 0.005 && std::abs(*r.strength + 0.04) <= 0.005 &&
                  r.classification == SingularityClass::Attractive;
  return {ok, fmt("x0 = %.6f, C = %.6f", *r.node, *r.strength)};
}

Outcome c3() {
  const auto p = testing::fig5_mass();
  const auto s = testing::fig5_params();
  const auto r = shapeinv::singularity(p, s, 5);
  if (!r.node || !r.strength) return {false, "no node found"};
  bool ok = r.classification == SingularityClass::Repulsive && std::abs(*r.strength - 0.20) <= 0.01;
  const auto pred = shapeinv::friedrichs_selection(s, shapeinv::spectrum(s, 3, true), true);
  const auto e = oracle(p, s, verify::one_sided_grid(*r.node, 12, 6000, verify::Side::Right), 3);
  const auto rep = verify::compare(pred, e, 5e-3);
  double worst = 0.0;
  for (const auto& l : rep.levels) worst = std::max(worst, std::abs(l.delta));
  for (int n = 0; n <= 3; ++n) ok = ok && pred[n].energy == -4.5 + 4 * n;
  ok = ok && rep.pass && rep.levels.size() == 3;
  return {ok, fmt("C = %.4f (caption 0.25), levels n=1..3 max |dE| = %.2e", *r.strength, worst)};
}

Outcome c4() {
  std::mt19937_64 rng(20240601);
  auto u = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  double worst = 0.0;
  int sets = 0;
  for (int family = 0; family < 2; ++family) {
    for (int k = 0; k < 5; ++k) {
      MassProfile p = MassProfile::constant(1);
      if (family == 0) {
        const double a = u(1.2, 5.0);
        p = MassProfile::hyperbolic(a, u(0.1, 0.9) * a * (k % 2 ? 1 : -1));
      } else {
        const double a = k % 2 ? u(0.2, 0.9) : u(1.1, 4.0);
        p = MassProfile::algebraic(a);
      }
      const SIParams s{u(0.5, 6.0), u(0.0, 6.0), u(-3.0, 6.0), u(-2.0, 2.0)};
      if (!validate(p, s).ok()) return {false, "drew an inadmissible set"};
      const auto x0 = mass::find_g_node(p, s, 50);
      const double c = x0 ? *x0 : 0.0;
      // Both sides of the node, keeping 0.25 away from it.
      for (auto g : {Grid::span(c + 0.25, c + 4.25, 801), Grid::span(c - 4.25, c - 0.25, 801)}) {
        const auto sc = susy2::build_scheme(p, s, g);
        for (std::size_t i = 0; i < g.n; ++i) {
          worst = std::max(worst, std::abs(sc.v_minus()[i] - sc.v_plus()[i] - 2 * s.lambda));
        }
      }
      ++sets;
    }
  }
  return {worst < 1e-10, fmt("%g parameter sets, max |v- - v+ - 2 lambda| = %.2e", sets, worst)};
}

Outcome c5() {
  const auto p = testing::fig1_mass();
  const auto s = testing::fig1_params();
  const Grid coarse = Grid::span(-8, 8, 1601);  // h = 0.01
  const Grid fine = Grid::span(-8, 8, 3201);    // h = 0.005
  const auto sc = susy2::build_scheme(p, s, coarse);
  const auto sf = susy2::build_scheme(p, s, fine);
  double min_ratio = 1e300, max_fine = 0.0;
  for (auto d : testing::gaussian_draws(10)) {
    const double rc = susy2::identity_residual(sc, testing::gaussian(coarse, d.c, d.s)).r_plus;
    const double rf = susy2::identity_residual(sf, testing::gaussian(fine, d.c, d.s)).r_plus;
    min_ratio = std::min(min_ratio, rc / rf);
    max_fine = std::max(max_fine, rf);
  }
  return {min_ratio >= 3.5 && max_fine < 1e-5,
          fmt("min ratio h->h/2 = %.2f, max residual at h=0.005 = %.2e", min_ratio, max_fine)};
}

Outcome c6() {
  const auto p = testing::fig1_mass();
  const auto s = testing::fig1_params();
  const Grid g = Grid::span(-6, 6, 2401);
  // lambda == K3: the Type II W2 has no pole, so it lives on the whole line.
  const auto w2 = susy1::reduced_superpotential(p, s, s.k3, g);
  const auto pp = susy1::partner_potentials_1(w2, p);
  const auto sc = susy2::build_scheme(p, s, g);
  double first = 0.0, second = 0.0;
  for (auto d : testing::gaussian_draws(10)) {
    const auto f = testing::gaussian(g, d.c, d.s);
    const auto lhs = susy1::apply_A(w2.w, p, susy1::apply_hamiltonian(p, pp.v_plus, f));
    const auto rhs = susy1::apply_hamiltonian(p, pp.v_minus, susy1::apply_A(w2.w, p, f));
    first = std::max(first, trimmed_rel(axpy(lhs, -1.0, rhs), f));
    second = std::max(second, susy2::identity_residual(sc, f).r_minus);
  }
  return {first < 1e-6 && second < 1e-6,
          fmt("first order %.2e, second order %.2e", first, second)};
}

Outcome c7() {
  const auto p = testing::fig1_mass();
  const auto s = testing::fig1_params();
  const Grid g = Grid::span(-6, 6, 2401);
  const auto model = shapeinv::build_model(p, s, g);
  const double l = s.lambda, k = s.k3;
  auto closed = [&](int power) {
    return GridFunction::sample(g, [&](double x) {
      const double gx = mass::g_function(p, s, x);
      const double poly = power == 1 ? gx * gx + k - 2 * l
                                     : std::pow(gx * gx + k - 4 * l, 2) + 2 * l * (k - 4 * l);
      return poly * std::pow(mass::eval(p, x).m, 0.25) *
             num::signed_pow(gx, (l - k) / (2 * l)) * std::exp(-gx * gx / (4 * l));
    });
  };
  double worst = 0.0;
  for (int power : {1, 2}) {
    const SpectrumEntry e{2 * power, -4.5 + 2 * power * l, Branch::J2, power, true};
    const auto st = shapeinv::ladder_state(model, e);
    worst = std::max(worst, testing::projective_error(st.values(), closed(power).values(), num::kTrim));
  }
  return {worst < 1e-5, fmt("max projective error %.2e", worst)};
}

Outcome c8() {
  const auto sc = susy2::build_scheme(testing::fig1_mass(), testing::fig1_params(), Grid::span(-6, 6, 2401));
  const auto zm = susy2::zero_modes(sc);
  const bool both = zm.plus_normalizable[0] && zm.plus_normalizable[1];
  const Grid g = Grid::span(-8, 8, 1601);
  const std::vector<std::function<double(double)>> ws{
      [](double x) { return x; },        [](double x) { return -x; },
      [](double x) { return x * x * x; }, [](double x) { return 3 * std::tanh(x); },
      [](double x) { return -2 * std::tanh(x); }, [](double) { return 0.0; },
      [](double) { return 1.0; }};
  int fixtures = 0, violations = 0, normalizable = 0;
  for (auto p : {MassProfile::constant(1), MassProfile::hyperbolic(2, 1), MassProfile::algebraic(2)}) {
    for (const auto& w : ws) {
      const auto gs = susy1::ground_states_1(susy1::sample_superpotential(g, w), p);
      violations += gs.plus_normalizable && gs.minus_normalizable;
      normalizable += gs.plus_normalizable || gs.minus_normalizable;
      ++fixtures;
    }
  }
  const auto w2 = susy1::reduced_superpotential(testing::fig1_mass(), testing::fig1_params(), 4.0, g);
  const auto gs = susy1::ground_states_1(w2, testing::fig1_mass());
  violations += gs.plus_normalizable && gs.minus_normalizable;
  ++fixtures;
  const std::string d = std::string("second order both normalizable: ") + (both ? "yes" : "no") +
                        "; first order " + std::to_string(fixtures) + " fixtures, " +
                        std::to_string(normalizable) + " with one normalizable mode, " +
                        std::to_string(violations) + " with two";
  return {both && violations == 0 && normalizable > 0, d};
}

Outcome c9() {
  const auto s = testing::fig1_params();
  const Grid g = Grid::span(-4, 4, 801);
  const auto cm = shapeinv::cm_limit_potential(s, g);
  const auto hyp = shapeinv::si_potential(MassProfile::hyperbolic(1.0, 0.001), s, g);
  const double dev = testing::max_abs_diff(hyp.values(), cm.values());
  // alpha = 1 of the algebraic family is m = 1.
  const auto alg = shapeinv::si_potential(MassProfile::constant(1), s, g);
  const double exact = testing::max_abs_diff(alg.values(), cm.values());
  return {dev < 0.05 && exact < 1e-12,
          fmt("hyperbolic beta=0.001 max dev %.4f (limit 0.05), algebraic alpha=1 %.1e", dev, exact)};
}

Outcome c10() {
  const SIParams s = testing::fig3_params();
  const auto rec = susy1::reduced_si_recursion(s, 5);
  const auto sp = shapeinv::spectrum(s, 4, false);
  const double want[] = {4, 12, 16, 24};
  bool ok = true;
  std::string d = "eps =";
  for (int n = 1; n <= 4; ++n) {
    ok = ok && rec[n].epsilon == want[n - 1] && sp[n].energy - s.eta2() == rec[n].epsilon;
    d += " " + cli::format_number(rec[n].epsilon);
  }
  return {ok, d};
}

Outcome c11() {
  const auto osc = verify::lowest_eigenpairs(
      verify::discretize(MassProfile::constant(1), [](double x) { return x * x; }, 10.0, 2000), 3);
  const auto box = verify::lowest_eigenpairs(
      verify::discretize(MassProfile::constant(1), [](double) { return 0.0; }, M_PI / 2, 2000), 5);
  double worst = 0.0;
  for (int n = 0; n < 3; ++n) worst = std::max(worst, std::abs(osc[n].energy - (2 * n + 1)));
  for (int n = 0; n < 5; ++n) worst = std::max(worst, std::abs(box[n].energy - (n + 1) * (n + 1)));
  bool ok = worst < 1e-3;
  int checked = 0;
  for (const char* f : {"fig1", "fig3", "fig5", "interior"}) {
    const auto c = cli::load_config(std::string(SSUSY_CONFIG_DIR) + "/" + f + ".json");
    const Grid g = oracle_grid(c);
    const auto d = verify::discretize(c.profile, shapeinv::si_potential(c.profile, c.params, g));
    const auto e = verify::lowest_eigenpairs(d, 5);
    for (int n = 0; n < 5; ++n) {
      const double delta = 1e-7 * std::max(1.0, std::abs(e[n].energy));
      ok = ok && e[n].nodes == n && verify::sturm_count(d, e[n].energy - delta) == n &&
           verify::sturm_count(d, e[n].energy + delta) == n + 1;
      ++checked;
    }
  }
  return {ok, fmt("oscillator/box max |dE| = %.2e, node counts on %g levels", worst, checked)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc) {
      expected.insert(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--expect-fail N]...\n", argv[0]);
      return 2;
    }
  }
  const std::vector<std::function<Outcome()>> criteria{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11};
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) failed.insert(id);
    std::printf("criterion %2d: %s  %s%s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(),
                !o.pass && expected.count(id) ? "  (expected)" : "");
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed.size(), criteria.size());
  return failed == expected ? 0 : 1;
}
