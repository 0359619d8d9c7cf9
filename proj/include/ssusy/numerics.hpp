#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ssusy/domain.hpp"

namespace ssusy::num {

// Points per side computed with one-sided stencils (lower accuracy).
inline constexpr std::size_t kBoundaryPoints = 2;
// Points per side excluded from every residual norm.
inline constexpr std::size_t kTrim = 10;

// Fourth-order finite differences: 5-point central stencils in the interior,
// 5-point one-sided stencils on the two outermost points of each side.
std::vector<double> d1(std::span<const double> f, double h);
std::vector<double> d2(std::span<const double> f, double h);

GridFunction d1(const GridFunction& f);
GridFunction d2(const GridFunction& f);

// Discrete L2 norm (sqrt(h sum f^2)) skipping `trim` points on each side.
double l2_norm(std::span<const double> f, double h, std::size_t trim = 0);
double l2_norm(const GridFunction& f, std::size_t trim = 0);
double inner(std::span<const double> a, std::span<const double> b, double h,
             std::size_t trim = 0);

// ||a - b|| / ||b|| on the trimmed interior.
double relative_residual(std::span<const double> a, std::span<const double> b, double h,
                         std::size_t trim = kTrim);

// |<a,b>| / (||a|| ||b||).
double overlap(std::span<const double> a, std::span<const double> b, double h,
               std::size_t trim = 0);

// Cumulative trapezoid of sampled f, zero at index `origin`.
std::vector<double> cumulative_trapezoid(std::span<const double> f, double h,
                                         std::size_t origin);

// Cumulative integral of a pointwise-evaluable f over the grid, 5-point
// Gauss-Legendre on every cell, zero at index `origin`.
std::vector<double> cumulative_gauss(const std::function<double(double)>& f,
                                     const Grid& grid, std::size_t origin);

// base^p continued through base < 0: (-1)^p |base|^p for integer p, |base|^p
// otherwise (piecewise on each side of a node).
double signed_pow(double base, double p);

// Number of sign changes, ignoring samples below rel_floor * max|f|.
int count_sign_changes(std::span<const double> f, double rel_floor = 1e-10);

}  // namespace ssusy::num
