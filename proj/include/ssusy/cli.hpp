#pragma once

// Command-line surface of ssusy_em. Commands build models from a JSON
// config and delegate to the library; they only format and write output.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssusy/domain.hpp"

namespace ssusy::cli {

enum class OracleSide { Auto, Left, Right };

struct GridSpec {
  double L = 12.0;
  std::size_t N = 6000;
  OracleSide side = OracleSide::Auto;  // subdomain used when the potential is singular
};

struct RunConfig {
  MassProfile profile = MassProfile::constant(1.0);
  SIParams params;
  std::optional<OrderingParams> ordering;
  std::optional<double> shift_epsilon;
  GridSpec grid;
  std::vector<std::string> outputs{"spectrum"};
};

// Field-level problem with a config; message() names the field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "lambda" may be a number or {"num": p, "den": q}, read as K3 * p / q.
// Throws ConfigError naming the offending field, including domain
// validation failures.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// Shortest round-trip decimal.
std::string format_number(double v);

// Exit codes: 0 success / verification passed, 1 verification failed,
// 2 invalid input or numerical error.
int cmd_spectrum(const RunConfig& config, int n_max, bool json,
                 const std::optional<std::string>& out_dir, std::ostream& out);
// Caption parameter sets are built in. `overrides` may carry "grid" {L, N}
// (plot window [-L, L] with N samples), individual "params" keys, "ordering"
// and "shift_epsilon"; the swept parameter of each figure is not overridable.
int cmd_figure(const std::optional<nlohmann::json>& overrides, const std::string& figure_id,
               const std::string& out_dir, std::ostream& out);
int cmd_verify(const RunConfig& config, int n_levels, double tol, bool json, std::ostream& out);

// Full argument vector including the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ssusy::cli
