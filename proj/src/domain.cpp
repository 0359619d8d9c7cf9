#include "ssusy/domain.hpp"

#include <cmath>
#include <sstream>

#include "ssusy/errors.hpp"

namespace ssusy {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::NodeInDomain: return "NodeInDomain";
    case ErrorCode::SuperpotentialNode: return "SuperpotentialNode";
    case ErrorCode::SingularInDomain: return "SingularInDomain";
    case ErrorCode::UnderResolved: return "UnderResolved";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
  }
  return "Unknown";
}

MassProfile MassProfile::constant(double m0) {
  return MassProfile(MassKind::Constant, m0, 0.0);
}

MassProfile MassProfile::hyperbolic(double alpha, double beta) {
  if (alpha < 0.0) {
    alpha = -alpha;
    beta = -beta;
  }
  return MassProfile(MassKind::Hyperbolic, alpha, beta);
}

MassProfile MassProfile::algebraic(double alpha) {
  return MassProfile(MassKind::Algebraic, alpha, 0.0);
}

Grid Grid::span(double lo, double hi, std::size_t n) {
  if (n < 2 || !(hi > lo)) {
    throw Error(ErrorCode::InvalidInput, "grid span needs hi > lo and n >= 2");
  }
  return Grid{lo, (hi - lo) / static_cast<double>(n - 1), n};
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() < kMinPoints) {
    throw Error(ErrorCode::GridTooSmall, "grid function needs at least 5 points");
  }
  if (!(grid_.h > 0.0) || !std::isfinite(grid_.h)) {
    throw Error(ErrorCode::InvalidInput, "grid spacing must be positive");
  }
  if (grid_.n != values_.size()) {
    throw Error(ErrorCode::InvalidInput, "grid size does not match value count");
  }
}

bool GridFunction::all_finite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

std::string ValidationResult::message() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i].field << ": " << violations[i].rule;
  }
  return os.str();
}

ValidationResult validate(const MassProfile& profile) {
  ValidationResult r;
  auto fail = [&](std::string field, std::string rule) {
    r.violations.push_back({std::move(field), std::move(rule)});
  };
  switch (profile.kind()) {
    case MassKind::Constant:
      if (!std::isfinite(profile.m0()) || !(profile.m0() > 0.0)) {
        fail("profile.m0", "m0 must be > 0");
      }
      break;
    case MassKind::Hyperbolic:
      if (!std::isfinite(profile.alpha()) || !std::isfinite(profile.beta())) {
        fail("profile.alpha", "alpha and beta must be finite");
        break;
      }
      if (profile.beta() == 0.0) fail("profile.beta", "beta must be != 0");
      if (!(std::abs(profile.alpha()) > std::abs(profile.beta()))) {
        fail("profile.alpha", "|alpha| > |beta| violated");
      }
      break;
    case MassKind::Algebraic:
      if (!std::isfinite(profile.alpha()) || !(profile.alpha() > 0.0)) {
        fail("profile.alpha", "alpha must be > 0");
      } else if (profile.alpha() == 1.0) {
        fail("profile.alpha", "alpha must be != 1");
      }
      break;
  }
  return r;
}

ValidationResult validate(const SIParams& p) {
  ValidationResult r;
  auto fail = [&](std::string field, std::string rule) {
    r.violations.push_back({std::move(field), std::move(rule)});
  };
  if (!std::isfinite(p.lambda) || !(p.lambda > 0.0)) {
    fail("params.lambda", "λ must be > 0");
  }
  if (!std::isfinite(p.k3) || p.k3 < 0.0) fail("params.k3", "K3 must be >= 0");
  if (!std::isfinite(p.l1)) fail("params.l1", "l1 must be finite");
  if (!std::isfinite(p.gamma)) fail("params.gamma", "gamma must be finite");
  return r;
}

ValidationResult validate(const MassProfile& profile, const SIParams& params) {
  ValidationResult r = validate(profile);
  for (auto& v : validate(params).violations) r.violations.push_back(std::move(v));
  return r;
}

const char* to_string(MassKind kind) {
  switch (kind) {
    case MassKind::Constant: return "constant";
    case MassKind::Hyperbolic: return "hyperbolic";
    case MassKind::Algebraic: return "algebraic";
  }
  return "unknown";
}

const char* to_string(Branch branch) { return branch == Branch::J1 ? "J1" : "J2"; }

const char* to_string(SingularityClass c) {
  switch (c) {
    case SingularityClass::NonSingular: return "non_singular";
    case SingularityClass::Attractive: return "attractive";
    case SingularityClass::Repulsive: return "repulsive";
  }
  return "unknown";
}

// ---- JSON -----------------------------------------------------------------

namespace {

[[noreturn]] void bad_json(const std::string& what) {
  throw Error(ErrorCode::InvalidInput, what);
}

double number_at(const nlohmann::json& j, const char* key, const char* owner) {
  if (!j.contains(key)) bad_json(std::string(owner) + "." + key + ": missing");
  if (!j.at(key).is_number()) bad_json(std::string(owner) + "." + key + ": must be a number");
  return j.at(key).get<double>();
}

}  // namespace

void to_json(nlohmann::json& j, const MassProfile& p) {
  j = nlohmann::json{{"kind", to_string(p.kind())}};
  switch (p.kind()) {
    case MassKind::Constant: j["m0"] = p.m0(); break;
    case MassKind::Hyperbolic:
      j["alpha"] = p.alpha();
      j["beta"] = p.beta();
      break;
    case MassKind::Algebraic: j["alpha"] = p.alpha(); break;
  }
}

void from_json(const nlohmann::json& j, MassProfile& p) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    bad_json("profile.kind: missing");
  }
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "constant") {
    p = MassProfile::constant(number_at(j, "m0", "profile"));
  } else if (kind == "hyperbolic") {
    p = MassProfile::hyperbolic(number_at(j, "alpha", "profile"),
                                number_at(j, "beta", "profile"));
  } else if (kind == "algebraic") {
    p = MassProfile::algebraic(number_at(j, "alpha", "profile"));
  } else {
    bad_json("profile.kind: unknown kind '" + kind + "'");
  }
}

void to_json(nlohmann::json& j, const OrderingParams& p) {
  j = nlohmann::json{{"a", p.a}, {"b", p.b}};
}

void from_json(const nlohmann::json& j, OrderingParams& p) {
  p.a = number_at(j, "a", "ordering");
  p.b = number_at(j, "b", "ordering");
}

void to_json(nlohmann::json& j, const SIParams& p) {
  j = nlohmann::json{{"lambda", p.lambda}, {"k3", p.k3},     {"l1", p.l1},
                     {"gamma", p.gamma},   {"l2", p.l2()},   {"eta1", p.eta1()},
                     {"eta2", p.eta2()}};
}

// Derived keys (l2, eta1, eta2) are ignored on input.
void from_json(const nlohmann::json& j, SIParams& p) {
  p.lambda = number_at(j, "lambda", "params");
  p.k3 = number_at(j, "k3", "params");
  p.l1 = number_at(j, "l1", "params");
  p.gamma = number_at(j, "gamma", "params");
}

void to_json(nlohmann::json& j, const GridFunction& f) {
  j = nlohmann::json{{"x0", f.grid().x0}, {"h", f.h()}, {"values", f.values()}};
}

void from_json(const nlohmann::json& j, GridFunction& f) {
  auto values = j.at("values").get<std::vector<double>>();
  Grid g{number_at(j, "x0", "grid_function"), number_at(j, "h", "grid_function"),
         values.size()};
  f = GridFunction(g, std::move(values));
}

void to_json(nlohmann::json& j, const SpectrumEntry& e) {
  j = nlohmann::json{{"n", e.n},
                     {"energy", e.energy},
                     {"branch", to_string(e.branch)},
                     {"ladder_power", e.ladder_power},
                     {"regular", e.regular}};
}

void from_json(const nlohmann::json& j, SpectrumEntry& e) {
  e.n = j.at("n").get<int>();
  e.energy = j.at("energy").get<double>();
  const auto b = j.at("branch").get<std::string>();
  if (b != "J1" && b != "J2") bad_json("spectrum_entry.branch: expected J1 or J2");
  e.branch = b == "J1" ? Branch::J1 : Branch::J2;
  e.ladder_power = j.at("ladder_power").get<int>();
  e.regular = j.at("regular").get<bool>();
}

void to_json(nlohmann::json& j, const SingularityReport& r) {
  j = nlohmann::json{{"node", nullptr},
                     {"strength", nullptr},
                     {"classification", to_string(r.classification)},
                     {"admissible", r.admissible}};
  if (r.node) j["node"] = *r.node;
  if (r.strength) j["strength"] = *r.strength;
}

void from_json(const nlohmann::json& j, SingularityReport& r) {
  r.node.reset();
  r.strength.reset();
  if (!j.at("node").is_null()) r.node = j.at("node").get<double>();
  if (!j.at("strength").is_null()) r.strength = j.at("strength").get<double>();
  const auto c = j.at("classification").get<std::string>();
  if (c == "non_singular") r.classification = SingularityClass::NonSingular;
  else if (c == "attractive") r.classification = SingularityClass::Attractive;
  else if (c == "repulsive") r.classification = SingularityClass::Repulsive;
  else bad_json("singularity.classification: unknown value '" + c + "'");
  r.admissible = j.at("admissible").get<bool>();
}

}  // namespace ssusy
