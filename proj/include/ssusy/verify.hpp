#pragma once

// SUSY-blind oracle: H = -d/dx (1/m d/dx) + v on a truncated interval with
// Dirichlet walls, discretized as a symmetric tridiagonal matrix. Only the
// mass profile and the sampled potential are consumed here.

#include <functional>
#include <optional>
#include <vector>

#include <json.hpp>

#include "ssusy/domain.hpp"

namespace ssusy::verify {

inline constexpr std::size_t kMinInterior = 50;
inline constexpr int kMaxLevels = 20;
inline constexpr int kMaxInverseIterations = 50;

struct Discretization {
  Grid grid;  // interior nodes; walls sit one h beyond each end
  std::vector<double> diag;
  std::vector<double> offdiag;  // size n - 1
};

// n interior nodes strictly inside (lo, hi): h = (hi - lo)/(n + 1).
Grid interior_grid(double lo, double hi, std::size_t n);

// Flux-conservative scheme
//   (H psi)_i = [-(1/m)_{i+1/2}(psi_{i+1} - psi_i) + (1/m)_{i-1/2}(psi_i - psi_{i-1})]/h^2 + v_i psi_i
// with 1/m taken in closed form at the midpoints. `v` is sampled on the
// interior nodes. Throws InvalidInput below 50 nodes, SingularInDomain if v
// is not finite somewhere.
Discretization discretize(const MassProfile& profile, const GridFunction& v);
// Symmetric interval (-L, L) with n interior nodes.
Discretization discretize(const MassProfile& profile, const std::function<double(double)>& v,
                          double L, std::size_t n);

enum class Side { Left, Right };
// Subdomain on one side of a singular point x_node: the wall sits at x_node,
// the nearest interior node one cell away, the far wall at -L or +L.
Grid one_sided_grid(double x_node, double L, std::size_t n, Side side);

// Number of eigenvalues strictly below e (Sturm sequence / LDL^T inertia).
int sturm_count(const Discretization& d, double e);

struct Eigenpair {
  double energy;
  GridFunction psi;  // unit discrete L2 norm, largest-magnitude sample positive
  int nodes;
};

// k <= 20 lowest eigenpairs: bisection on the Sturm count (tolerance
// 1e-10 max(1, |E|)), inverse iteration for the vectors. Throws
// ConvergenceFailure (location = level index) when inverse iteration stalls.
std::vector<Eigenpair> lowest_eigenpairs(const Discretization& d, int k);

struct LevelComparison {
  int n;
  double predicted;
  double computed;
  double delta;
  std::optional<double> overlap;
  bool pass;
};

struct ComparisonReport {
  double tol = 0.0;
  std::vector<LevelComparison> levels;
  bool pass = false;
  std::optional<int> first_failure;  // n of the first failing level
};

// Regular predicted entries are paired in order with the computed levels.
// `predicted_states`, when given, holds one state per regular entry on the
// oracle grid and fills in the overlaps. Throws LengthMismatch if fewer
// levels were computed than regular entries requested.
ComparisonReport compare(const std::vector<SpectrumEntry>& predicted,
                         const std::vector<Eigenpair>& computed, double tol,
                         const std::vector<GridFunction>& predicted_states = {});

// 0 pass, 1 fail. Errors map to 2 at the call site.
int exit_code(const ComparisonReport& report);

void to_json(nlohmann::json& j, const LevelComparison& c);
void to_json(nlohmann::json& j, const ComparisonReport& r);

}  // namespace ssusy::verify
