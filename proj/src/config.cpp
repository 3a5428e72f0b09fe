#include "optomem/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "optomem/errors.hpp"

namespace optomem {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
  if (used != v.size()) throw ConfigError(key + ": trailing characters in '" + v + "'");
  if (!std::isfinite(out)) throw ConfigError(key + ": value must be finite");
  return out;
}

std::size_t parse_count(const std::string& key, const std::string& v) {
  const double d = parse_double(key, v);
  if (d < 0.0 || d != std::floor(d)) throw ConfigError(key + ": expected a non-negative integer");
  return static_cast<std::size_t>(d);
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  if (v.empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
  return out;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt_double(v[i]);
  }
  return out;
}

struct Field {
  std::string key;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename Member>
Field number_field(std::string key, Member member) {
  return {key,
          [key, member](RunConfig& c, const std::string& v) { std::invoke(member, c) = parse_double(key, v); },
          [member](const RunConfig& c) { return fmt_double(std::invoke(member, c)); }};
}

template <typename Member>
Field count_field(std::string key, Member member) {
  return {key,
          [key, member](RunConfig& c, const std::string& v) { std::invoke(member, c) = parse_count(key, v); },
          [member](const RunConfig& c) { return std::to_string(std::invoke(member, c)); }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back({"name", [](RunConfig& c, const std::string& v) { c.name = v; },
                 [](const RunConfig& c) { return c.name; }});
    f.push_back({"mode",
                 [](RunConfig& c, const std::string& v) {
                   if (v == "two_mode") c.mode = RunMode::TwoMode;
                   else if (v == "combined_kerr") c.mode = RunMode::CombinedKerr;
                   else throw ConfigError("mode: expected two_mode or combined_kerr, got '" + v + "'");
                 },
                 [](const RunConfig& c) { return to_string(c.mode); }});
    f.push_back(number_field("params.omega_c", [](auto& c) -> auto& { return c.params.omega_c; }));
    f.push_back(number_field("params.omega_m", [](auto& c) -> auto& { return c.params.omega_m; }));
    f.push_back(number_field("params.k_c", [](auto& c) -> auto& { return c.params.k_c; }));
    f.push_back(number_field("params.k_m", [](auto& c) -> auto& { return c.params.k_m; }));
    f.push_back(number_field("params.g0", [](auto& c) -> auto& { return c.params.g0; }));
    f.push_back(number_field("params.gamma_c", [](auto& c) -> auto& { return c.params.gamma_c; }));
    f.push_back(number_field("params.gamma_m", [](auto& c) -> auto& { return c.params.gamma_m; }));
    f.push_back(
        number_field("params.bath_temp_kelvin", [](auto& c) -> auto& { return c.params.bath_temp; }));
    f.push_back({"params.zero_linear_frequencies",
                 [](RunConfig& c, const std::string& v) {
                   c.zero_linear_frequencies = parse_bool("params.zero_linear_frequencies", v);
                 },
                 [](const RunConfig& c) { return std::string(c.zero_linear_frequencies ? "true" : "false"); }});
    f.push_back(count_field("dims.optical", [](auto& c) -> auto& { return c.dim_optical; }));
    f.push_back(count_field("dims.mechanical", [](auto& c) -> auto& { return c.dim_mechanical; }));
    f.push_back(count_field("dims.combined", [](auto& c) -> auto& { return c.dim_combined; }));
    f.push_back({"initial.storage_mode",
                 [](RunConfig& c, const std::string& v) {
                   if (v == "optical") c.storage = StorageMode::Optical;
                   else if (v == "mechanical") c.storage = StorageMode::Mechanical;
                   else throw ConfigError("initial.storage_mode: expected optical or mechanical, got '" + v + "'");
                 },
                 [](const RunConfig& c) { return to_string(c.storage); }});
    f.push_back({"initial.alpha_re",
                 [](RunConfig& c, const std::string& v) { c.alpha.real(parse_double("initial.alpha_re", v)); },
                 [](const RunConfig& c) { return fmt_double(c.alpha.real()); }});
    f.push_back({"initial.alpha_im",
                 [](RunConfig& c, const std::string& v) { c.alpha.imag(parse_double("initial.alpha_im", v)); },
                 [](const RunConfig& c) { return fmt_double(c.alpha.imag()); }});
    f.push_back({"time.horizon",
                 [](RunConfig& c, const std::string& v) {
                   if (v == "auto") c.horizon.reset();
                   else c.horizon = parse_double("time.horizon", v);
                 },
                 [](const RunConfig& c) { return c.horizon ? fmt_double(*c.horizon) : std::string("auto"); }});
    f.push_back(count_field("time.n_samples", [](auto& c) -> auto& { return c.n_samples; }));
    f.push_back({"time.snapshots",
                 [](RunConfig& c, const std::string& v) { c.snapshots = parse_list("time.snapshots", v); },
                 [](const RunConfig& c) { return fmt_list(c.snapshots); }});
    f.push_back(number_field("wigner.x_min", [](auto& c) -> auto& { return c.wigner_grid.x_min; }));
    f.push_back(number_field("wigner.x_max", [](auto& c) -> auto& { return c.wigner_grid.x_max; }));
    f.push_back(count_field("wigner.nx", [](auto& c) -> auto& { return c.wigner_grid.nx; }));
    f.push_back(number_field("wigner.p_min", [](auto& c) -> auto& { return c.wigner_grid.p_min; }));
    f.push_back(number_field("wigner.p_max", [](auto& c) -> auto& { return c.wigner_grid.p_max; }));
    f.push_back(count_field("wigner.np", [](auto& c) -> auto& { return c.wigner_grid.np; }));
    f.push_back({"integrator.method",
                 [](RunConfig& c, const std::string& v) {
                   if (v == "dopri5") c.stepper = Stepper::Dopri5;
                   else if (v == "rk4") c.stepper = Stepper::Rk4Fixed;
                   else throw ConfigError("integrator.method: expected dopri5 or rk4, got '" + v + "'");
                 },
                 [](const RunConfig& c) { return std::string(c.stepper == Stepper::Dopri5 ? "dopri5" : "rk4"); }});
    f.push_back(number_field("integrator.rtol", [](auto& c) -> auto& { return c.rtol; }));
    f.push_back(number_field("integrator.atol", [](auto& c) -> auto& { return c.atol; }));
    f.push_back(number_field("integrator.fixed_step", [](auto& c) -> auto& { return c.fixed_step; }));
    f.push_back(number_field("revival.prominence", [](auto& c) -> auto& { return c.prominence; }));
    f.push_back(
        number_field("revival.collapse_threshold", [](auto& c) -> auto& { return c.collapse_threshold; }));
    f.push_back(number_field("revival.min_separation", [](auto& c) -> auto& { return c.min_separation; }));
    f.push_back({"output.dir", [](RunConfig& c, const std::string& v) { c.output_dir = v; },
                 [](const RunConfig& c) { return c.output_dir; }});
    f.push_back({"sweep.axis",
                 [](RunConfig& c, const std::string& v) {
                   if (v == "none") {
                     c.sweep.reset();
                     return;
                   }
                   SweepAxis axis;
                   if (v == "gamma") axis = SweepAxis::Gamma;
                   else if (v == "nonlinearity") axis = SweepAxis::Nonlinearity;
                   else if (v == "bath_temp") axis = SweepAxis::BathTemp;
                   else if (v == "alpha") axis = SweepAxis::Alpha;
                   else throw ConfigError("sweep.axis: unknown axis '" + v + "'");
                   if (!c.sweep) c.sweep.emplace();
                   c.sweep->axis = axis;
                 },
                 [](const RunConfig& c) { return c.sweep ? to_string(c.sweep->axis) : std::string("none"); }});
    f.push_back({"sweep.values",
                 [](RunConfig& c, const std::string& v) {
                   if (!c.sweep) c.sweep.emplace();
                   c.sweep->values = parse_list("sweep.values", v);
                 },
                 [](const RunConfig& c) { return c.sweep ? fmt_list(c.sweep->values) : std::string(); }});
    return f;
  }();
  return table;
}

const Field& find_field(const std::string& key) {
  for (const auto& f : fields()) {
    if (f.key == key) return f;
  }
  throw ConfigError("unknown config key '" + key + "'");
}

std::pair<std::string, std::string> split_assignment(std::string_view line) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) throw ConfigError("expected key = value, got '" + std::string(line) + "'");
  std::string key = trim(line.substr(0, eq));
  std::string value = trim(line.substr(eq + 1));
  if (key.empty()) throw ConfigError("empty key in '" + std::string(line) + "'");
  return {std::move(key), std::move(value)};
}

// Preset definitions, applied on top of the defaults.
const std::map<std::string, std::string, std::less<>>& preset_table() {
  static const std::map<std::string, std::string, std::less<>> table = {
      {"fig2-combined", R"(
name = fig2-combined
mode = combined_kerr
dims.combined = 30
)"},
      {"fig4", R"(
name = fig4
mode = two_mode
time.horizon = 628
)"},
      {"harmonic-check", R"(
name = harmonic-check
mode = two_mode
params.k_c = 0
params.k_m = 0
params.gamma_c = 0
params.gamma_m = 0
time.horizon = 628
)"},
      {"fig5", R"(
name = fig5
mode = combined_kerr
sweep.axis = gamma
sweep.values = 1e-5, 1e-4, 1e-3, 1e-2
)"},
      {"fig6", R"(
name = fig6
mode = combined_kerr
sweep.axis = nonlinearity
sweep.values = 0.5, 0.05, 0.005, 0.0005
)"},
      {"fig7", R"(
name = fig7
mode = combined_kerr
sweep.axis = bath_temp
sweep.values = 30e-6, 30e-3, 0.3, 3
)"},
      {"fig8", R"(
name = fig8
mode = combined_kerr
sweep.axis = alpha
sweep.values = 0.1, 0.5, 1.0, 2.0
)"},
  };
  return table;
}

}  // namespace

std::string to_string(RunMode mode) { return mode == RunMode::TwoMode ? "two_mode" : "combined_kerr"; }

std::string to_string(StorageMode mode) { return mode == StorageMode::Optical ? "optical" : "mechanical"; }

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Gamma: return "gamma";
    case SweepAxis::Nonlinearity: return "nonlinearity";
    case SweepAxis::BathTemp: return "bath_temp";
    case SweepAxis::Alpha: return "alpha";
  }
  return "unknown";
}

void RunConfig::validate() const {
  try {
    params.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  if (dim_optical == 0 || dim_mechanical == 0 || dim_combined == 0) {
    throw ConfigError("mode truncations must be >= 1");
  }
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) throw ConfigError("alpha must be finite");
  if (horizon && !(*horizon > 0.0)) throw ConfigError("time.horizon must be positive");
  if (n_samples < 100) throw ConfigError("time.n_samples must be >= 100");
  try {
    wigner_grid.validate();
  } catch (const DimensionError& e) {
    throw ConfigError(e.what());
  }
  if (!(rtol > 0.0) || !(atol > 0.0)) throw ConfigError("integrator tolerances must be positive");
  if (stepper == Stepper::Rk4Fixed && !(fixed_step > 0.0)) {
    throw ConfigError("integrator.fixed_step must be positive for rk4");
  }
  if (!(prominence > 0.0) || !(collapse_threshold > 0.0) || !(min_separation >= 0.0)) {
    throw ConfigError("revival thresholds must be positive");
  }
  if (sweep) {
    if (sweep->values.empty()) throw ConfigError("sweep.values must not be empty");
    std::set<double> distinct(sweep->values.begin(), sweep->values.end());
    if (distinct.size() != sweep->values.size()) throw ConfigError("sweep.values must be distinct");
  }
  (void)resolved_horizon();
}

double RunConfig::resolved_horizon() const {
  if (horizon) return *horizon;
  const auto t_rev = revival_prediction();
  if (!t_rev) throw ConfigError("time.horizon = auto needs k_c + k_m > 0");
  return 2.0 * *t_rev;
}

std::optional<double> RunConfig::revival_prediction() const {
  if (params.k_c + params.k_m > 0.0) return revival_time(params.k_c, params.k_m);
  return std::nullopt;
}

RevivalOptions RunConfig::revival_options() const {
  RevivalOptions o;
  o.t_rev = revival_prediction();
  o.prominence = prominence;
  o.collapse_threshold = collapse_threshold;
  o.min_separation = min_separation;
  return o;
}

EvolveOptions RunConfig::evolve_options() const {
  EvolveOptions o;
  o.stepper = stepper;
  o.rtol = rtol;
  o.atol = atol;
  o.fixed_step = fixed_step;
  return o;
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    try {
      auto [key, value] = split_assignment(line);
      if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'");
      find_field(key).set(base, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

void apply_override(RunConfig& config, std::string_view assignment) {
  auto [key, value] = split_assignment(assignment);
  find_field(key).set(config, value);
}

std::string to_config_text(const RunConfig& config) {
  std::string out;
  for (const auto& f : fields()) {
    if (f.key == "sweep.values" && !config.sweep) continue;
    out += f.key + " = " + f.get(config) + "\n";
  }
  return out;
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& f : fields()) k.push_back(f.key);
    return k;
  }();
  return keys;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"fig2-combined", "fig4", "fig5", "fig6",
                                                 "fig7", "fig8", "harmonic-check"};
  return names;
}

RunConfig preset(std::string_view name) {
  const auto it = preset_table().find(name);
  if (it == preset_table().end()) throw ConfigError("unknown preset '" + std::string(name) + "'");
  return parse_config(it->second);
}

RunConfig with_sweep_value(const RunConfig& base, SweepAxis axis, double value) {
  RunConfig c = base;
  c.sweep.reset();
  switch (axis) {
    case SweepAxis::Gamma:
      c.params.gamma_c = value;
      c.params.gamma_m = value;
      break;
    case SweepAxis::Nonlinearity:
      c.params.k_c = value;
      c.params.k_m = value;
      break;
    case SweepAxis::BathTemp: c.params.bath_temp = value; break;
    case SweepAxis::Alpha: c.alpha = cplx(value, 0.0); break;
  }
  return c;
}

}  // namespace optomem
