#include "ssusy/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "ssusy/errors.hpp"
#include "ssusy/mass.hpp"
#include "ssusy/numerics.hpp"

namespace ssusy::verify {

namespace {

// Solves (T - sigma) x = b in place, Gaussian elimination with partial
// pivoting (two superdiagonals after row swaps).
void shifted_solve(const Discretization& t, double sigma, std::vector<double>& b) {
  const std::size_t n = t.diag.size();
  std::vector<double> d(n), dl(t.offdiag), du(t.offdiag), du2(n, 0.0);
  std::vector<bool> swapped(n, false);
  for (std::size_t i = 0; i < n; ++i) d[i] = t.diag[i] - sigma;
  double tiny = 0.0;
  for (std::size_t i = 0; i < n; ++i) tiny = std::max(tiny, std::abs(d[i]));
  tiny = std::max(tiny, 1.0) * std::numeric_limits<double>::epsilon();

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = tiny;
      const double f = dl[i] / d[i];
      dl[i] = f;
      d[i + 1] -= f * du[i];
    } else {
      const double f = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = f;
      const double tmp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = tmp - f * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du[i + 1];
      }
      swapped[i] = true;
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = tiny;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (swapped[i]) std::swap(b[i], b[i + 1]);
    b[i + 1] -= dl[i] * b[i];
  }
  b[n - 1] /= d[n - 1];
  if (n >= 2) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
  for (std::size_t i = n - 2; i-- > 0;) {
    b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
  }
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void gershgorin(const Discretization& d, double& lo, double& hi) {
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  const std::size_t n = d.diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(d.offdiag[i - 1]);
    if (i + 1 < n) r += std::abs(d.offdiag[i]);
    lo = std::min(lo, d.diag[i] - r);
    hi = std::max(hi, d.diag[i] + r);
  }
}

}  // namespace

Grid interior_grid(double lo, double hi, std::size_t n) {
  if (!(hi > lo) || n == 0) throw Error(ErrorCode::InvalidInput, "empty oracle interval");
  const double h = (hi - lo) / static_cast<double>(n + 1);
  return Grid{lo + h, h, n};
}

Grid one_sided_grid(double x_node, double L, std::size_t n, Side side) {
  return side == Side::Right ? interior_grid(x_node, L, n) : interior_grid(-L, x_node, n);
}

Discretization discretize(const MassProfile& profile, const GridFunction& v) {
  const std::size_t n = v.size();
  if (n < kMinInterior) {
    throw Error(ErrorCode::InvalidInput, "oracle needs N >= 50 interior points");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(v[i])) {
      std::ostringstream os;
      os << "potential is not finite at x = " << v.x(i)
         << "; split the domain at the singular point";
      throw Error(ErrorCode::SingularInDomain, os.str(), v.x(i));
    }
  }
  const double h = v.h();
  const double h2 = h * h;
  // 1/m at the n + 1 midpoints x_{i-1/2}, i = 0 .. n.
  std::vector<double> inv_m(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double xm = v.x(0) + (static_cast<double>(i) - 0.5) * h;
    inv_m[i] = 1.0 / mass::eval(profile, xm).m;
  }
  Discretization d{v.grid(), std::vector<double>(n), std::vector<double>(n - 1)};
  for (std::size_t i = 0; i < n; ++i) {
    d.diag[i] = (inv_m[i] + inv_m[i + 1]) / h2 + v[i];
    if (i + 1 < n) d.offdiag[i] = -inv_m[i + 1] / h2;
  }
  return d;
}

Discretization discretize(const MassProfile& profile, const std::function<double(double)>& v,
                          double L, std::size_t n) {
  if (!(L > 0.0)) throw Error(ErrorCode::InvalidInput, "L must be > 0");
  const Grid grid = interior_grid(-L, L, n);
  if (n < kMinInterior) {
    throw Error(ErrorCode::InvalidInput, "oracle needs N >= 50 interior points");
  }
  return discretize(profile, GridFunction::sample(grid, v));
}

int sturm_count(const Discretization& d, double e) {
  const std::size_t n = d.diag.size();
  const double tiny = std::numeric_limits<double>::min();
  int count = 0;
  double q = d.diag[0] - e;
  for (std::size_t i = 0;; ++i) {
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
    if (i + 1 == n) break;
    q = d.diag[i + 1] - e - d.offdiag[i] * d.offdiag[i] / q;
  }
  return count;
}

std::vector<Eigenpair> lowest_eigenpairs(const Discretization& d, int k) {
  if (k <= 0 || k > kMaxLevels) {
    throw Error(ErrorCode::InvalidInput, "number of levels must be in 1..20");
  }
  const std::size_t n = d.diag.size();
  if (static_cast<std::size_t>(k) > n) {
    throw Error(ErrorCode::InvalidInput, "more levels requested than grid points");
  }
  double glo, ghi;
  gershgorin(d, glo, ghi);

  std::vector<double> energies;
  double floor = glo;
  for (int idx = 0; idx < k; ++idx) {
    double a = floor, b = ghi;
    for (int it = 0; it < 400; ++it) {
      const double mid = 0.5 * (a + b);
      if (b - a <= 1e-10 * std::max(1.0, std::abs(mid)) || mid == a || mid == b) break;
      if (sturm_count(d, mid) > idx) b = mid;
      else a = mid;
    }
    energies.push_back(0.5 * (a + b));
    floor = a;
  }

  std::mt19937_64 rng(20240229);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const double sqrt_h = std::sqrt(d.grid.h);
  std::vector<std::vector<double>> vecs;
  std::vector<Eigenpair> out;
  for (int idx = 0; idx < k; ++idx) {
    std::vector<double> x(n);
    for (double& v : x) v = uni(rng);
    bool converged = false;
    for (int it = 0; it < kMaxInverseIterations; ++it) {
      std::vector<double> y = x;
      shifted_solve(d, energies[idx], y);
      for (const auto& prev : vecs) {
        const double c = dot(y, prev);
        for (std::size_t i = 0; i < n; ++i) y[i] -= c * prev[i];
      }
      const double ny = norm2(y);
      if (!(ny > 0.0) || !std::isfinite(ny)) break;
      for (double& v : y) v /= ny;
      if (it > 0) {
        const double sign = dot(x, y) < 0.0 ? -1.0 : 1.0;
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(y[i] - sign * x[i]));
        x = std::move(y);
        if (diff < 1e-10) {
          converged = true;
          break;
        }
      } else {
        x = std::move(y);
      }
    }
    if (!converged) {
      throw Error(ErrorCode::ConvergenceFailure,
                  "inverse iteration stalled for level " + std::to_string(idx), idx);
    }
    std::size_t peak = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs(x[i]) > std::abs(x[peak])) peak = i;
    }
    if (x[peak] < 0.0) {
      for (double& v : x) v = -v;
    }
    vecs.push_back(x);
    std::vector<double> psi(n);
    for (std::size_t i = 0; i < n; ++i) psi[i] = x[i] / sqrt_h;
    const int nodes = num::count_sign_changes(psi);
    out.push_back({energies[idx], GridFunction(d.grid, std::move(psi)), nodes});
  }
  return out;
}

ComparisonReport compare(const std::vector<SpectrumEntry>& predicted,
                         const std::vector<Eigenpair>& computed, double tol,
                         const std::vector<GridFunction>& predicted_states) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidInput, "tolerance must be > 0");
  std::vector<SpectrumEntry> regular;
  for (const auto& e : predicted) {
    if (e.regular) regular.push_back(e);
  }
  if (computed.size() < regular.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(regular.size()) + " regular levels predicted but only " +
                    std::to_string(computed.size()) + " computed");
  }
  if (!predicted_states.empty() && predicted_states.size() != regular.size()) {
    throw Error(ErrorCode::LengthMismatch, "one predicted state per regular level expected");
  }
  ComparisonReport report;
  report.tol = tol;
  report.pass = true;
  for (std::size_t i = 0; i < regular.size(); ++i) {
    LevelComparison c{regular[i].n, regular[i].energy, computed[i].energy,
                      computed[i].energy - regular[i].energy, std::nullopt, false};
    c.pass = std::abs(c.delta) <= tol;
    if (!predicted_states.empty()) {
      const auto& p = predicted_states[i];
      if (!(p.grid() == computed[i].psi.grid())) {
        throw Error(ErrorCode::InvalidInput, "predicted state not on the oracle grid");
      }
      c.overlap = num::overlap(p.values(), computed[i].psi.values(), p.h());
    }
    if (!c.pass && report.pass) {
      report.pass = false;
      report.first_failure = c.n;
    }
    report.levels.push_back(c);
  }
  return report;
}

int exit_code(const ComparisonReport& report) { return report.pass ? 0 : 1; }

void to_json(nlohmann::json& j, const LevelComparison& c) {
  j = nlohmann::json{{"n", c.n},           {"predicted", c.predicted}, {"computed", c.computed},
                     {"delta", c.delta},   {"pass", c.pass}};
  j["overlap"] = c.overlap ? nlohmann::json(*c.overlap) : nlohmann::json(nullptr);
}

void to_json(nlohmann::json& j, const ComparisonReport& r) {
  j = nlohmann::json{{"tol", r.tol}, {"pass", r.pass}, {"levels", r.levels}};
  j["first_failure"] = r.first_failure ? nlohmann::json(*r.first_failure) : nlohmann::json(nullptr);
}

}  // namespace ssusy::verify
