#include "ssusy/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ssusy/errors.hpp"

namespace ssusy::num {

namespace {

void require_stencil(std::size_t n) {
  if (n < GridFunction::kMinPoints) {
    throw Error(ErrorCode::GridTooSmall, "finite differences need at least 5 points");
  }
}

}  // namespace

std::vector<double> d1(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  require_stencil(n);
  std::vector<double> out(n);
  const double s = 1.0 / (12.0 * h);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    out[i] = (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) * s;
  }
  out[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * s;
  out[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * s;
  const std::size_t a = n - 1, b = n - 2, c = n - 3, d = n - 4, e = n - 5;
  out[a] = (25.0 * f[a] - 48.0 * f[b] + 36.0 * f[c] - 16.0 * f[d] + 3.0 * f[e]) * s;
  out[b] = (3.0 * f[a] + 10.0 * f[b] - 18.0 * f[c] + 6.0 * f[d] - f[e]) * s;
  return out;
}

std::vector<double> d2(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  require_stencil(n);
  std::vector<double> out(n);
  const double s = 1.0 / (12.0 * h * h);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    out[i] = (-f[i + 2] + 16.0 * f[i + 1] - 30.0 * f[i] + 16.0 * f[i - 1] - f[i - 2]) * s;
  }
  out[0] = (35.0 * f[0] - 104.0 * f[1] + 114.0 * f[2] - 56.0 * f[3] + 11.0 * f[4]) * s;
  out[1] = (11.0 * f[0] - 20.0 * f[1] + 6.0 * f[2] + 4.0 * f[3] - f[4]) * s;
  const std::size_t a = n - 1, b = n - 2, c = n - 3, d = n - 4, e = n - 5;
  out[a] = (35.0 * f[a] - 104.0 * f[b] + 114.0 * f[c] - 56.0 * f[d] + 11.0 * f[e]) * s;
  out[b] = (11.0 * f[a] - 20.0 * f[b] + 6.0 * f[c] + 4.0 * f[d] - f[e]) * s;
  return out;
}

GridFunction d1(const GridFunction& f) { return {f.grid(), d1(f.values(), f.h())}; }
GridFunction d2(const GridFunction& f) { return {f.grid(), d2(f.values(), f.h())}; }

double inner(std::span<const double> a, std::span<const double> b, double h,
             std::size_t trim) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::InvalidInput, "inner product of mismatched grids");
  }
  double acc = 0.0;
  for (std::size_t i = trim; i + trim < a.size(); ++i) acc += a[i] * b[i];
  return acc * h;
}

double l2_norm(std::span<const double> f, double h, std::size_t trim) {
  return std::sqrt(inner(f, f, h, trim));
}

double l2_norm(const GridFunction& f, std::size_t trim) {
  return l2_norm(f.values(), f.h(), trim);
}

double relative_residual(std::span<const double> a, std::span<const double> b, double h,
                         std::size_t trim) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::InvalidInput, "residual of mismatched grids");
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = trim; i + trim < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : std::sqrt(num * h);
  return std::sqrt(num / den);
}

double overlap(std::span<const double> a, std::span<const double> b, double h,
               std::size_t trim) {
  const double na = l2_norm(a, h, trim);
  const double nb = l2_norm(b, h, trim);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::abs(inner(a, b, h, trim)) / (na * nb);
}

std::vector<double> cumulative_trapezoid(std::span<const double> f, double h,
                                         std::size_t origin) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = origin + 1; i < n; ++i) out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
  for (std::size_t i = origin; i-- > 0;) out[i] = out[i + 1] - 0.5 * h * (f[i] + f[i + 1]);
  return out;
}

std::vector<double> cumulative_gauss(const std::function<double(double)>& f,
                                     const Grid& grid, std::size_t origin) {
  static constexpr std::array<double, 5> node = {
      0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
      0.9061798459386640};
  static constexpr std::array<double, 5> weight = {
      0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
      0.2369268850561891, 0.2369268850561891};
  auto cell = [&](std::size_t i) {
    const double mid = grid.x(i) + 0.5 * grid.h;
    double acc = 0.0;
    for (std::size_t k = 0; k < 5; ++k) acc += weight[k] * f(mid + 0.5 * grid.h * node[k]);
    return 0.5 * grid.h * acc;
  };
  std::vector<double> out(grid.n, 0.0);
  for (std::size_t i = origin + 1; i < grid.n; ++i) out[i] = out[i - 1] + cell(i - 1);
  for (std::size_t i = origin; i-- > 0;) out[i] = out[i + 1] - cell(i);
  return out;
}

double signed_pow(double base, double p) {
  const double r = std::round(p);
  if (std::abs(p - r) < 1e-12) return std::pow(base, r);
  return std::pow(std::abs(base), p);
}

int count_sign_changes(std::span<const double> f, double rel_floor) {
  double peak = 0.0;
  for (double v : f) peak = std::max(peak, std::abs(v));
  const double floor = rel_floor * peak;
  int changes = 0;
  int last = 0;
  for (double v : f) {
    if (std::abs(v) <= floor) continue;
    const int sign = v > 0.0 ? 1 : -1;
    if (last != 0 && sign != last) ++changes;
    last = sign;
  }
  return changes;
}

}  // namespace ssusy::num
