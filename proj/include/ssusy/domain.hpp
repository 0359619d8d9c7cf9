#pragma once

// Value types shared by every module. All types are immutable-by-convention
// plain values; nothing here does numerics beyond invariant checks.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ssusy {

enum class MassKind { Constant, Hyperbolic, Algebraic };

// Positive mass function with closed-form m, m', m'' and an antiderivative
// of sqrt(m).
//   Constant:   m = m0
//   Hyperbolic: m = (alpha + beta tanh x)^2
//   Algebraic:  m = ((alpha + x^2) / (1 + x^2))^2
class MassProfile {
 public:
  static MassProfile constant(double m0);
  // (alpha, beta) -> (-alpha, -beta) leaves m unchanged; a negative alpha is
  // flipped so that sqrt(m) = alpha + beta tanh x stays positive.
  static MassProfile hyperbolic(double alpha, double beta);
  static MassProfile algebraic(double alpha);

  MassKind kind() const { return kind_; }
  double m0() const { return p0_; }     // Constant only
  double alpha() const { return p0_; }  // Hyperbolic / Algebraic
  double beta() const { return p1_; }   // Hyperbolic only

  friend bool operator==(const MassProfile&, const MassProfile&) = default;

 private:
  MassProfile(MassKind kind, double p0, double p1)
      : kind_(kind), p0_(p0), p1_(p1) {}

  MassKind kind_ = MassKind::Constant;
  double p0_ = 1.0;
  double p1_ = 0.0;
};

// von Roos ordering parameters; c is eliminated through a + b + c = -1.
struct OrderingParams {
  double a = 0.0;
  double b = -1.0;

  double eta() const { return 1.0 + b + a * (a + b + 1.0); }

  friend bool operator==(const OrderingParams&, const OrderingParams&) = default;
};

// Shape-invariance parameter set. K3 is primary, l2 is derived from it so
// that l1^2 - 4 l2 = K3^2 holds by construction.
struct SIParams {
  double lambda = 1.0;
  double k3 = 0.0;
  double l1 = 0.0;
  double gamma = 0.0;

  double l2() const { return (l1 * l1 - k3 * k3) / 4.0; }
  double eta1() const { return (-l1 + k3) / 2.0; }
  double eta2() const { return -(l1 + k3) / 2.0; }

  friend bool operator==(const SIParams&, const SIParams&) = default;
};

// Uniform 1-D grid: x_i = x0 + i h, i = 0 .. n-1.
struct Grid {
  double x0 = 0.0;
  double h = 1.0;
  std::size_t n = 0;

  double x(std::size_t i) const { return x0 + static_cast<double>(i) * h; }
  double back() const { return x(n - 1); }

  // n points spanning [lo, hi] inclusive.
  static Grid span(double lo, double hi, std::size_t n);

  friend bool operator==(const Grid&, const Grid&) = default;
};

class GridFunction {
 public:
  static constexpr std::size_t kMinPoints = 5;

  GridFunction() = default;
  // Throws GridTooSmall for fewer than 5 points, InvalidInput for h <= 0 or
  // a size mismatch. Non-finite values are allowed (potentials diverge at a
  // node of g); use all_finite() where the contract needs it.
  GridFunction(Grid grid, std::vector<double> values);

  template <class F>
  static GridFunction sample(const Grid& grid, F&& f) {
    std::vector<double> v(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) v[i] = f(grid.x(i));
    return GridFunction(grid, std::move(v));
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double h() const { return grid_.h; }
  double x(std::size_t i) const { return grid_.x(i); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  bool all_finite() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

enum class Branch { J1, J2 };

struct SpectrumEntry {
  int n = 0;
  double energy = 0.0;
  Branch branch = Branch::J2;
  int ladder_power = 0;
  bool regular = true;

  friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

enum class SingularityClass { NonSingular, Attractive, Repulsive };

struct SingularityReport {
  std::optional<double> node;
  std::optional<double> strength;
  SingularityClass classification = SingularityClass::NonSingular;
  bool admissible = true;
};

struct Violation {
  std::string field;
  std::string rule;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string message() const;
};

ValidationResult validate(const MassProfile& profile);
ValidationResult validate(const SIParams& params);
ValidationResult validate(const MassProfile& profile, const SIParams& params);

// JSON, lower_snake_case field names, enums as tagged strings.
void to_json(nlohmann::json& j, const MassProfile& p);
void from_json(const nlohmann::json& j, MassProfile& p);
void to_json(nlohmann::json& j, const OrderingParams& p);
void from_json(const nlohmann::json& j, OrderingParams& p);
void to_json(nlohmann::json& j, const SIParams& p);
void from_json(const nlohmann::json& j, SIParams& p);
void to_json(nlohmann::json& j, const GridFunction& f);
void from_json(const nlohmann::json& j, GridFunction& f);
void to_json(nlohmann::json& j, const SpectrumEntry& e);
void from_json(const nlohmann::json& j, SpectrumEntry& e);
void to_json(nlohmann::json& j, const SingularityReport& r);
void from_json(const nlohmann::json& j, SingularityReport& r);

const char* to_string(MassKind kind);
const char* to_string(Branch branch);
const char* to_string(SingularityClass c);

}  // namespace ssusy
