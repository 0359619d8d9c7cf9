#include "ssusy/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "ssusy/errors.hpp"
#include "ssusy/mass.hpp"
#include "ssusy/shapeinv.hpp"
#include "ssusy/verify.hpp"

namespace ssusy::cli {

using nlohmann::json;

namespace {

double number_field(const json& j, const std::string& key, const std::string& field) {
  if (!j.contains(key)) throw ConfigError(field + ": missing");
  if (!j.at(key).is_number()) throw ConfigError(field + ": must be a number");
  return j.at(key).get<double>();
}

// lambda as a number, or {"num": p, "den": q} meaning K3 * p / q.
double read_lambda(const json& params, double k3) {
  if (!params.contains("lambda")) throw ConfigError("params.lambda: missing");
  const json& l = params.at("lambda");
  if (l.is_number()) return l.get<double>();
  if (l.is_object()) {
    const double num = number_field(l, "num", "params.lambda.num");
    const double den = number_field(l, "den", "params.lambda.den");
    if (den == 0.0) throw ConfigError("params.lambda.den: must be != 0");
    return k3 * num / den;
  }
  throw ConfigError("params.lambda: must be a number or {\"num\", \"den\"}");
}

SIParams read_params(const json& p, const SIParams& defaults, bool all_required) {
  if (!p.is_object()) throw ConfigError("params: must be an object");
  SIParams out = defaults;
  auto read = [&](const char* key, double& dst) {
    if (p.contains(key) || all_required) dst = number_field(p, key, std::string("params.") + key);
  };
  read("k3", out.k3);
  read("l1", out.l1);
  read("gamma", out.gamma);
  if (p.contains("lambda") || all_required) out.lambda = read_lambda(p, out.k3);
  return out;
}

OrderingParams read_ordering(const json& j) {
  if (!j.is_object()) throw ConfigError("ordering: must be an object");
  return {number_field(j, "a", "ordering.a"), number_field(j, "b", "ordering.b")};
}

GridSpec read_grid(const json& j, GridSpec g) {
  if (!j.is_object()) throw ConfigError("grid: must be an object");
  if (j.contains("L")) {
    g.L = number_field(j, "L", "grid.L");
    if (!(g.L > 0.0)) throw ConfigError("grid.L: must be > 0");
  }
  if (j.contains("N")) {
    if (!j.at("N").is_number_integer()) throw ConfigError("grid.N: must be an integer");
    const auto n = j.at("N").get<long long>();
    if (n < static_cast<long long>(verify::kMinInterior)) throw ConfigError("grid.N: must be >= 50");
    g.N = static_cast<std::size_t>(n);
  }
  if (j.contains("side")) {
    const auto s = j.at("side").is_string() ? j.at("side").get<std::string>() : "";
    if (s == "auto") g.side = OracleSide::Auto;
    else if (s == "left") g.side = OracleSide::Left;
    else if (s == "right") g.side = OracleSide::Right;
    else throw ConfigError("grid.side: must be one of auto, left, right");
  }
  return g;
}

void require_valid(const MassProfile& profile, const SIParams& params) {
  const auto v = validate(profile, params);
  if (!v.ok()) throw ConfigError(v.message());
}

const char* regime_name(shapeinv::RegimeKind k) {
  switch (k) {
    case shapeinv::RegimeKind::Large: return "large";
    case shapeinv::RegimeKind::Interior: return "interior";
    case shapeinv::RegimeKind::Boundary: return "boundary";
  }
  return "unknown";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + path.string());
  f << content;
}

struct Column {
  std::string name;
  std::vector<double> values;
};

std::string to_csv(const std::vector<Column>& cols) {
  std::string s;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (c) s += ',';
    s += cols[c].name;
  }
  s += '\n';
  const std::size_t rows = cols.empty() ? 0 : cols[0].values.size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c) s += ',';
      s += format_number(cols[c].values[r]);
    }
    s += '\n';
  }
  return s;
}

// x, m, v_plus and, with an ordering, v_em = v_plus - rho(m) + epsilon.
std::vector<Column> potential_columns(const MassProfile& profile, const SIParams& params,
                                      const std::optional<OrderingParams>& ordering,
                                      std::optional<double> shift, const Grid& grid) {
  std::vector<Column> cols{{"x", {}}, {"m", {}}, {"v_plus", {}}};
  const auto v = shapeinv::si_potential(profile, params, grid);
  for (std::size_t i = 0; i < grid.n; ++i) {
    cols[0].values.push_back(grid.x(i));
    cols[1].values.push_back(mass::eval(profile, grid.x(i)).m);
    cols[2].values.push_back(v[i]);
  }
  if (ordering) {
    Column em{"v_em", {}};
    for (std::size_t i = 0; i < grid.n; ++i) {
      em.values.push_back(v[i] - mass::pseudo_potential(profile, *ordering, grid.x(i)) +
                          shift.value_or(0.0));
    }
    cols.push_back(std::move(em));
  }
  return cols;
}

std::size_t thread_budget() {
  if (const char* env = std::getenv("SSUSY_EM_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return static_cast<std::size_t>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct Panel {
  std::string name;
  MassProfile profile;
  SIParams params;
  std::vector<int> levels;  // spectrum indices whose states are written
  bool density = false;     // |psi|^2 instead of psi
};

std::vector<Panel> figure_panels(const std::string& id, const SIParams& base) {
  std::vector<Panel> panels;
  if (id == "fig1") {
    for (double a : {1.2, 2.0, 5.0, 10.0}) {
      panels.push_back({"fig1_alpha_" + format_number(a), MassProfile::hyperbolic(a, 1.0), base, {}, false});
    }
  } else if (id == "fig2") {
    for (double b : {0.9, 0.001}) {
      panels.push_back({"fig2_beta_" + format_number(b), MassProfile::hyperbolic(1.0, b), base, {0, 1, 2}, false});
    }
  } else if (id == "fig3") {
    for (double lam : {4.0, 6.0}) {
      SIParams p = base;
      p.lambda = lam;
      panels.push_back({"fig3_lambda_" + format_number(lam), MassProfile::hyperbolic(2.0, 1.0), p, {0, 1, 2}, true});
    }
  } else if (id == "fig4") {
    for (double a : {0.3, 0.6, 1.0, 10.0}) {
      // alpha = 1 is the constant-mass member of the family.
      const auto profile = a == 1.0 ? MassProfile::constant(1.0) : MassProfile::algebraic(a);
      panels.push_back({"fig4_alpha_" + format_number(a), profile, base, {}, false});
    }
  } else if (id == "fig5") {
    panels.push_back({"fig5", MassProfile::algebraic(2.0), base, {1, 2, 3}, true});
  }
  return panels;
}

SIParams figure_base_params(const std::string& id) {
  if (id == "fig1") return {4.0, 4.0, 5.0, 1.0};
  if (id == "fig2") return {4.0, 4.0, 5.0, 1.0};
  if (id == "fig3") return {4.0, 4.0, 5.0, 1.0};
  if (id == "fig4") return {4.0, 4.0, 5.0, 1.0};
  return {2.0, 4.0, 5.0, 1.0};  // fig5
}

std::string render_panel(const Panel& p, const Grid& grid, const std::optional<OrderingParams>& ord,
                         std::optional<double> shift) {
  auto cols = potential_columns(p.profile, p.params, ord, shift, grid);
  if (!p.levels.empty()) {
    const int n_max = *std::max_element(p.levels.begin(), p.levels.end());
    const auto entries = shapeinv::spectrum(p.params, n_max, true);
    for (int n : p.levels) {
      const auto psi = shapeinv::ladder_closed_form(p.profile, p.params, entries[n], grid);
      Column c{(p.density ? "rho_" : "psi_") + std::to_string(n), psi.values()};
      if (p.density) {
        for (double& v : c.values) v *= v;
      }
      cols.push_back(std::move(c));
    }
  }
  return to_csv(cols);
}

// Oracle grid: full (-L, L), or one side of the node of g when the potential
// is singular there.
Grid oracle_grid(const RunConfig& c, const SingularityReport& s) {
  if (s.classification == SingularityClass::NonSingular || !s.node) {
    return verify::interior_grid(-c.grid.L, c.grid.L, c.grid.N);
  }
  if (std::abs(*s.node) >= c.grid.L) {
    throw Error(ErrorCode::InvalidInput, "singular point lies outside (-L, L)", *s.node);
  }
  const auto side = c.grid.side == OracleSide::Left ? verify::Side::Left : verify::Side::Right;
  return verify::one_sided_grid(*s.node, c.grid.L, c.grid.N, side);
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config: must be a JSON object");
  RunConfig c;
  if (!j.contains("profile")) throw ConfigError("profile: missing");
  try {
    from_json(j.at("profile"), c.profile);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (!j.contains("params")) throw ConfigError("params: missing");
  c.params = read_params(j.at("params"), SIParams{}, true);
  if (j.contains("ordering")) c.ordering = read_ordering(j.at("ordering"));
  if (j.contains("shift_epsilon")) c.shift_epsilon = number_field(j, "shift_epsilon", "shift_epsilon");
  if (j.contains("grid")) c.grid = read_grid(j.at("grid"), c.grid);
  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    if (!o.is_array()) throw ConfigError("outputs: must be an array");
    c.outputs.clear();
    for (const auto& item : o) {
      const auto s = item.is_string() ? item.get<std::string>() : "";
      if (s != "spectrum" && s != "potential" && s != "states") {
        throw ConfigError("outputs: entries must be spectrum, potential or states");
      }
      c.outputs.push_back(s);
    }
  }
  require_valid(c.profile, c.params);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config: cannot open " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return parse_config(j);
}

int cmd_spectrum(const RunConfig& config, int n_max, bool as_json,
                 const std::optional<std::string>& out_dir, std::ostream& out) {
  if (n_max < 0) throw ConfigError("nmax: must be >= 0");
  const auto report = shapeinv::singularity(config.profile, config.params, config.grid.L);
  const auto regime = shapeinv::classify_regime(config.params);
  const auto entries = shapeinv::spectrum(config.params, n_max, report.node.has_value());
  const auto shift = config.shift_epsilon;

  if (as_json) {
    json j{{"profile", config.profile},
           {"params", config.params},
           {"regime", {{"kind", regime_name(regime.kind)}, {"kappa", regime.kappa}}},
           {"singularity", report},
           {"levels", entries}};
    if (shift) {
      for (std::size_t i = 0; i < entries.size(); ++i) {
        j["levels"][i]["energy_em"] = entries[i].energy + *shift;
      }
    }
    out << j.dump(2) << '\n';
  } else {
    out << "n\tenergy\tbranch\tpower\tregular" << (shift ? "\tenergy_em" : "") << '\n';
    for (const auto& e : entries) {
      out << e.n << '\t' << format_number(e.energy) << '\t' << to_string(e.branch) << '\t'
          << e.ladder_power << '\t' << (e.regular ? "yes" : "no");
      if (shift) out << '\t' << format_number(e.energy + *shift);
      out << '\n';
    }
  }

  if (out_dir) {
    const std::filesystem::path dir(*out_dir);
    std::filesystem::create_directories(dir);
    auto wants = [&](const char* k) {
      return std::find(config.outputs.begin(), config.outputs.end(), k) != config.outputs.end();
    };
    const Grid grid = Grid::span(-config.grid.L, config.grid.L, config.grid.N);
    if (wants("spectrum")) {
      std::vector<Column> cols{{"n", {}}, {"energy", {}}, {"ladder_power", {}}, {"regular", {}}};
      if (shift) cols.push_back({"energy_em", {}});
      for (const auto& e : entries) {
        cols[0].values.push_back(e.n);
        cols[1].values.push_back(e.energy);
        cols[2].values.push_back(e.ladder_power);
        cols[3].values.push_back(e.regular ? 1.0 : 0.0);
        if (shift) cols[4].values.push_back(e.energy + *shift);
      }
      write_file(dir / "spectrum.csv", to_csv(cols));
    }
    if (wants("potential")) {
      write_file(dir / "potential.csv",
                 to_csv(potential_columns(config.profile, config.params, config.ordering, shift, grid)));
    }
    if (wants("states")) {
      std::vector<Column> cols{{"x", {}}};
      for (std::size_t i = 0; i < grid.n; ++i) cols[0].values.push_back(grid.x(i));
      for (const auto& e : entries) {
        if (!e.regular) continue;
        const auto psi = shapeinv::ladder_closed_form(config.profile, config.params, e, grid);
        cols.push_back({"psi_" + std::to_string(e.n), psi.values()});
      }
      write_file(dir / "states.csv", to_csv(cols));
    }
  }
  return 0;
}

int cmd_figure(const std::optional<json>& overrides, const std::string& figure_id,
               const std::string& out_dir, std::ostream& out) {
  static const std::vector<std::string> known{"fig1", "fig2", "fig3", "fig4", "fig5"};
  if (std::find(known.begin(), known.end(), figure_id) == known.end()) {
    throw ConfigError("figure: unknown id '" + figure_id + "' (expected fig1..fig5)");
  }
  GridSpec gs{5.0, 1001, OracleSide::Auto};
  SIParams base = figure_base_params(figure_id);
  std::optional<OrderingParams> ordering;
  std::optional<double> shift;
  if (overrides) {
    const json& o = *overrides;
    if (!o.is_object()) throw ConfigError("config: must be a JSON object");
    if (o.contains("grid")) gs = read_grid(o.at("grid"), gs);
    if (o.contains("params")) base = read_params(o.at("params"), base, false);
    if (o.contains("ordering")) ordering = read_ordering(o.at("ordering"));
    if (o.contains("shift_epsilon")) shift = number_field(o, "shift_epsilon", "shift_epsilon");
  }
  const auto panels = figure_panels(figure_id, base);
  for (const auto& p : panels) require_valid(p.profile, p.params);

  const Grid grid = Grid::span(-gs.L, gs.L, gs.N);
  std::vector<std::string> csv(panels.size());
  const std::size_t budget = thread_budget();
  for (std::size_t start = 0; start < panels.size(); start += budget) {
    const std::size_t stop = std::min(panels.size(), start + budget);
    std::vector<std::future<std::string>> jobs;
    for (std::size_t i = start; i < stop; ++i) {
      jobs.push_back(std::async(budget > 1 ? std::launch::async : std::launch::deferred,
                                [&, i] { return render_panel(panels[i], grid, ordering, shift); }));
    }
    for (std::size_t i = start; i < stop; ++i) csv[i] = jobs[i - start].get();
  }

  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const auto path = dir / (panels[i].name + ".csv");
    write_file(path, csv[i]);
    out << path.string() << '\n';
  }
  return 0;
}

int cmd_verify(const RunConfig& config, int n_levels, double tol, bool as_json,
               std::ostream& out) {
  if (n_levels < 1 || n_levels > verify::kMaxLevels) throw ConfigError("levels: must be in 1..20");
  if (!(tol > 0.0)) throw ConfigError("tol: must be > 0");
  const auto report = shapeinv::singularity(config.profile, config.params, config.grid.L);
  const Grid grid = oracle_grid(config, report);
  const bool split = report.classification != SingularityClass::NonSingular;

  // Predicted levels: the first n_levels the oracle can see.
  std::vector<SpectrumEntry> predicted;
  for (int n_max = n_levels - 1; n_max < 4 * n_levels + 8; ++n_max) {
    predicted = shapeinv::friedrichs_selection(
        config.params, shapeinv::spectrum(config.params, n_max, report.node.has_value()), split);
    const auto regular = std::count_if(predicted.begin(), predicted.end(),
                                       [](const SpectrumEntry& e) { return e.regular; });
    if (regular >= n_levels) break;
  }
  std::vector<SpectrumEntry> chosen;
  for (const auto& e : predicted) {
    if (e.regular && static_cast<int>(chosen.size()) < n_levels) chosen.push_back(e);
  }
  std::vector<GridFunction> states;
  for (const auto& e : chosen) {
    states.push_back(shapeinv::ladder_closed_form(config.profile, config.params, e, grid));
  }

  const auto v = shapeinv::si_potential(config.profile, config.params, grid);
  const auto d = verify::discretize(config.profile, v);
  const auto computed = verify::lowest_eigenpairs(d, static_cast<int>(chosen.size()));
  const auto cmp = verify::compare(chosen, computed, tol, states);

  if (as_json) {
    out << json(cmp).dump(2) << '\n';
  } else {
    out << "n\tpredicted\tcomputed\tdelta\toverlap\tpass\n";
    for (const auto& l : cmp.levels) {
      out << l.n << '\t' << format_number(l.predicted) << '\t' << format_number(l.computed) << '\t'
          << format_number(l.delta) << '\t' << (l.overlap ? format_number(*l.overlap) : "-") << '\t'
          << (l.pass ? "yes" : "no") << '\n';
    }
    if (cmp.pass) {
      out << "PASS " << cmp.levels.size() << '/' << cmp.levels.size() << " levels within "
          << format_number(tol) << '\n';
    } else {
      out << "FAIL first failing level n=" << *cmp.first_failure << '\n';
    }
  }
  return verify::exit_code(cmp);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shape-invariant effective-mass models: spectra, figure data, oracle checks",
               "ssusy_em"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_dir;
  int n_max = 4;
  bool as_json = false;
  auto* spectrum = app.add_subcommand("spectrum", "print the algebraic spectrum");
  spectrum->add_option("--config", config_path, "JSON config")->required();
  spectrum->add_option("--nmax", n_max, "highest level index");
  spectrum->add_option("--out", out_dir, "directory for CSV outputs");
  spectrum->add_flag("--json", as_json, "print JSON instead of a table");

  std::string figure_id;
  std::string figure_out = ".";
  std::string figure_config;
  auto* figure = app.add_subcommand("figure", "write figure data as CSV");
  figure->add_option("--figure", figure_id, "fig1 .. fig5")->required();
  figure->add_option("--out", figure_out, "output directory");
  figure->add_option("--config", figure_config, "JSON overrides");

  int levels = 5;
  double tol = 2e-3;
  std::string verify_config;
  bool verify_json = false;
  auto* verify_cmd = app.add_subcommand("verify", "compare predictions with the oracle");
  verify_cmd->add_option("--config", verify_config, "JSON config")->required();
  verify_cmd->add_option("--levels", levels, "number of levels");
  verify_cmd->add_option("--tol", tol, "absolute energy tolerance");
  verify_cmd->add_flag("--json", verify_json, "print the report as JSON");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (spectrum->parsed()) {
      return cmd_spectrum(load_config(config_path), n_max, as_json, out_dir, out);
    }
    if (figure->parsed()) {
      std::optional<json> overrides;
      if (!figure_config.empty()) {
        std::ifstream f(figure_config);
        if (!f) throw ConfigError("config: cannot open " + figure_config);
        try {
          overrides = json::parse(f);
        } catch (const json::parse_error& e) {
          throw ConfigError(std::string("config: ") + e.what());
        }
      }
      return cmd_figure(overrides, figure_id, figure_out, out);
    }
    return cmd_verify(load_config(verify_config), levels, tol, verify_json, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return 2;
}

}  // namespace ssusy::cli
