#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ssusy/errors.hpp"
#include "ssusy/mass.hpp"
#include "ssusy/numerics.hpp"
#include "ssusy/shapeinv.hpp"
#include "ssusy/susy2.hpp"
#include "ssusy/verify.hpp"

using namespace ssusy;
using namespace ssusy::susy2;
using doctest::Approx;

namespace {

const Grid kLine = Grid::span(-6.0, 6.0, 2401);  // h = 0.005
const Grid kRight = Grid::span(0.2, 4.0, 761);

// Fig.-1 potential written out from the hyperbolic mass, independent of the library.
double fig1_v_plus(double x) {
  const double a = 2, b = 1, lam = 4, l1 = 5, gam = 1;
  const double ch = std::cosh(x), t = std::tanh(x);
  const double s = a + b * t;            // sqrt m
  const double g = gam + lam * (a * x + b * std::log(ch));
  const double m = s * s;
  const double sech2 = 1.0 / (ch * ch);
  const double dm = 2 * s * b * sech2;
  const double d2m = 2 * b * b * sech2 * sech2 - 4 * s * b * sech2 * t;
  return g * g / 4 + d2m / (4 * m * m) - 7.0 / 16.0 * dm * dm / (m * m * m) - (lam + l1 / 2);
}

}  // namespace

TEST_CASE("constant mass, gamma = 0, lambda = K3: c = lambda/2 + lambda^2 x^2/4") {
  for (double lam : {1.0, 2.5}) {
    SIParams s{lam, lam, 0.0, 0.0};
    auto sc = build_scheme(MassProfile::constant(1), s, Grid::span(0.5, 3, 101));
    for (double x : {0.5, 1.0, 1.7, 3.0}) {
      CHECK(sc.c(x) == Approx(lam / 2 + lam * lam * x * x / 4).epsilon(1e-13));
      CHECK(sc.wm(x) == Approx(lam * x));
    }
  }
}

TEST_CASE("Fig.-1 v+ against the written-out hyperbolic form") {
  auto sc = build_scheme(testing::fig1_mass(), testing::fig1_params(), kLine);
  for (std::size_t i = 0; i < kLine.n; i += 7) {
    CHECK(std::abs(sc.v_plus()[i] - fig1_v_plus(kLine.x(i))) < 1e-9 * std::max(1.0, std::abs(fig1_v_plus(kLine.x(i)))));
  }
}

TEST_CASE("v- - v+ = 2 lambda and the branch difference") {
  for (auto [p, s, g] : {std::tuple{testing::fig1_mass(), testing::fig1_params(), kLine},
                         std::tuple{testing::fig1_mass(), testing::fig3_params(), kRight},
                         std::tuple{testing::fig5_mass(), testing::fig5_params(), kRight}}) {
    auto sc = build_scheme(p, s, g);
    for (std::size_t i = 0; i < g.n; ++i) {
      CHECK(std::abs(sc.v_minus()[i] - sc.v_plus()[i] - 2 * s.lambda) < 1e-10);
      auto pt = sc.at(g.x(i));
      CHECK(std::abs(pt.v_minus - pt.v_plus - (2 * pt.dwm + pt.dm / pt.m * pt.wm)) < 1e-10);
    }
  }
}

TEST_CASE("combined c against the term-by-term c, and c reconstructed from v+") {
  auto sc = build_scheme(testing::fig1_mass(), testing::fig3_params(), kRight);
  for (double x : {0.2, 0.7, 1.5, 3.0}) {
    CHECK(sc.c(x) == Approx(sc.c_generic(x)).epsilon(1e-11));
  }
  auto f1 = build_scheme(testing::fig1_mass(), testing::fig1_params(), kLine);
  for (double x : {-3.0, -0.129158965480468, 0.0, 2.0}) {
    auto pt = f1.at(x);
    CHECK(std::isfinite(pt.c));
    CHECK(std::isfinite(pt.v_plus));
  }
}

TEST_CASE("strict node policy") {
  try {
    build_scheme(testing::fig1_mass(), testing::fig3_params(), kLine, NodePolicy::Strict);
    FAIL("expected SuperpotentialNode");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SuperpotentialNode);
    REQUIRE(e.location());
    CHECK(*e.location() == Approx(-0.0851435017797630).epsilon(1e-9));
  }
  CHECK_NOTHROW(build_scheme(testing::fig1_mass(), testing::fig1_params(), kLine, NodePolicy::Strict));
}

TEST_CASE("eta and formal eigenvalues") {
  SIParams s = testing::fig1_params();
  CHECK(eta(s, 1) == -0.5);
  CHECK(eta(s, 2) == -4.5);
  CHECK(eta(s, 1) > eta(s, 2));
  auto sc = build_scheme(testing::fig1_mass(), s, kLine);
  CHECK(formal_eigencheck(sc, 1) < 1e-6);
  CHECK(formal_eigencheck(sc, 2) < 1e-6);
  auto f3 = build_scheme(testing::fig1_mass(), testing::fig3_params(), kRight);
  CHECK(formal_eigencheck(f3, 1) < 1e-6);
  CHECK(formal_eigencheck(f3, 2) < 1e-6);
}

TEST_CASE("constant-mass oscillator limit: eta2 = -0.5 is the oracle ground level") {
  SIParams s{1.0, 1.0, 0.0, 0.0};
  CHECK(eta(s, 2) == -0.5);
  auto v = [&](double x) { return shapeinv::si_potential_at(MassProfile::constant(1), s, x); };
  auto d = verify::discretize(MassProfile::constant(1), v, 10.0, 4000);
  auto e = verify::lowest_eigenpairs(d, 1);
  CHECK(e[0].energy == Approx(-0.5).epsilon(1e-4));
}

TEST_CASE("zero modes against the closed form") {
  auto check = [](const MassProfile& p, const SIParams& s, const Grid& g) {
    auto sc = build_scheme(p, s, g);
    auto zm = zero_modes(sc);
    for (int j : {1, 2}) {
      const double k = j == 2 ? s.k3 : -s.k3;
      auto cf = GridFunction::sample(g, [&](double x) {
        const double gx = mass::g_function(p, s, x);
        const double m = mass::eval(p, x).m;
        return std::pow(m, 0.25) * num::signed_pow(gx, (s.lambda - k) / (2 * s.lambda)) *
               std::exp(-gx * gx / (4 * s.lambda));
      });
      CHECK(testing::projective_error(zm.plus[j - 1].values(), cf.values()) < 1e-8);
    }
  };
  check(testing::fig1_mass(), testing::fig1_params(), kLine);
  check(testing::fig1_mass(), testing::fig3_params(), kRight);
  check(testing::fig5_mass(), testing::fig5_params(), kRight);
}

TEST_CASE("K3 = 0 merges the two zero modes") {
  SIParams s{2.0, 0.0, 1.0, 1.0};
  auto sc = build_scheme(MassProfile::algebraic(2), s, kRight);
  for (double x : {0.3, 1.0, 2.5}) CHECK(zero_mode_flux(sc, 1, x) == zero_mode_flux(sc, 2, x));
  auto zm = zero_modes(sc);
  CHECK(testing::max_abs_diff(zm.plus[0].values(), zm.plus[1].values()) < 1e-14);
}

TEST_CASE("Fig.-1: both zero modes of A normalizable, psi_{0,1} has one node") {
  auto sc = build_scheme(testing::fig1_mass(), testing::fig1_params(), kLine);
  auto zm = zero_modes(sc);
  CHECK(zm.plus_normalizable[0]);
  CHECK(zm.plus_normalizable[1]);
  CHECK(num::l2_norm(zm.plus[1]) == Approx(1.0).epsilon(1e-12));
  CHECK(num::count_sign_changes(zm.plus[1].values()) == 0);
  CHECK(num::count_sign_changes(zm.plus[0].values()) == 1);
  CHECK_FALSE(zm.minus_normalizable[0]);
  CHECK_FALSE(zm.minus_normalizable[1]);
}

TEST_CASE("A annihilates psi+_{0,2}") {
  for (auto [p, s, g] : {std::tuple{testing::fig1_mass(), testing::fig1_params(), kLine},
                         std::tuple{testing::fig1_mass(), testing::fig3_params(), kRight}}) {
    auto sc = build_scheme(p, s, g);
    auto zm = zero_modes(sc);
    for (int j : {0, 1}) {
      auto r = apply_A(sc, zm.plus[j]);
      CHECK(num::l2_norm(r, num::kTrim) / num::l2_norm(zm.plus[j], num::kTrim) < 1e-6);
    }
  }
}

TEST_CASE("A on e^{-x^2} at constant mass against the hand expansion") {
  const double lam = 1.5;
  SIParams s{lam, lam, 0.0, 0.0};
  Grid g = Grid::span(-4, 4, 1601);
  auto sc = build_scheme(MassProfile::constant(1), s, g);
  auto af = apply_A(sc, GridFunction::sample(g, [](double x) { return std::exp(-x * x); }));
  for (std::size_t i = 20; i + 20 < g.n; i += 78) {
    const double x = g.x(i), f = std::exp(-x * x);
    const double d1 = -2 * x * f, d2 = (4 * x * x - 2) * f;
    const double c = lam / 2 + lam * lam * x * x / 4;
    CHECK(std::abs(af[i] - (d2 + lam * x * d1 + c * f)) < 1e-9);
  }
}

TEST_CASE("identity residuals") {
  for (auto [p, s, g] : {std::tuple{testing::fig1_mass(), testing::fig1_params(), kLine},
                         std::tuple{testing::fig1_mass(), testing::fig3_params(), kRight},
                         std::tuple{testing::fig5_mass(), testing::fig5_params(), kRight}}) {
    auto sc = build_scheme(p, s, g);
    const double mid = 0.5 * (g.x0 + g.back());
    for (auto d : testing::gaussian_draws(4)) {
      auto f = testing::gaussian(g, mid + 0.4 * d.c, d.s);
      auto r = identity_residual(sc, f);
      CHECK(r.r_plus < 1e-5);
      CHECK(r.r_minus < 1e-5);
    }
  }
  SIParams osc{1.0, 1.0, 0.0, 0.0};
  Grid g = Grid::span(-6, 6, 2401);
  auto sc = build_scheme(MassProfile::constant(1), osc, g);
  CHECK(identity_residual(sc, testing::gaussian(g, 0.3, 1.0)).r_plus < 1e-6);

  // Support touching the boundary still yields finite numbers.
  auto edge = identity_residual(sc, testing::gaussian(g, -6.0, 0.5));
  CHECK(std::isfinite(edge.r_plus));
  CHECK(std::isfinite(edge.r_minus));
}

TEST_CASE("identity residual decays at least like h^2") {
  auto p = testing::fig1_mass();
  SIParams s = testing::fig1_params();
  auto res = [&](std::size_t n) {
    Grid g = Grid::span(-3, 3, n);
    return identity_residual(build_scheme(p, s, g), testing::gaussian(g, 0.5, 1.0)).r_plus;
  };
  CHECK(res(301) / res(601) > 3.5);
}

TEST_CASE("constant-mass form round trip") {
  auto sc = build_scheme(testing::fig1_mass(), testing::fig3_params(), kRight);
  auto zm = zero_modes(sc);
  // psi+_{0,1} and psi-_{0,2}: sigma = +1; psi+_{0,2} and psi-_{0,1}: sigma = -1.
  CHECK(constant_mass_form_residual(sc, to_constant_mass_form(sc, zm.plus[0], +1), +1) < 1e-6);
  CHECK(constant_mass_form_residual(sc, to_constant_mass_form(sc, zm.plus[1], +1), -1) < 1e-6);
  CHECK(constant_mass_form_residual(sc, to_constant_mass_form(sc, zm.minus[1], -1), +1) < 1e-6);
  CHECK(constant_mass_form_residual(sc, to_constant_mass_form(sc, zm.minus[0], -1), -1) < 1e-6);
}

TEST_CASE("operators need five points") {
  auto sc = build_scheme(MassProfile::constant(1), SIParams{1, 1, 0, 0}, Grid::span(0.5, 1, 5));
  CHECK_NOTHROW(apply_A(sc, GridFunction(sc.grid(), std::vector<double>(5, 1.0))));
}
