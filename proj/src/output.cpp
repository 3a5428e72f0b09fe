#include "optomem/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "optomem/errors.hpp"

namespace optomem::io {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(line);
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("malformed number '" + s + "'");
  }
  while (used < s.size() && (s[used] == ' ' || s[used] == '\r')) ++used;
  if (used != s.size()) throw ConfigError("malformed number '" + s + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9e", v);
  return buf;
}

double rounded(double v) { return std::stod(format_double(v)); }

TrajectoryTable to_table(const Trajectory& traj) {
  const std::size_t n = traj.times.size();
  TrajectoryTable t;
  t.t = traj.times;
  t.a = traj.amplitude(0);
  t.b = traj.amplitudes.size() > 1 ? traj.amplitude(1) : std::vector<cplx>(n, cplx{});
  t.trace = traj.trace;
  t.purity = traj.purity;
  t.coherent_overlap = traj.coherent_overlap.value_or(
      std::vector<double>(n, std::numeric_limits<double>::quiet_NaN()));
  return t;
}

std::string trajectory_csv(const TrajectoryTable& table) {
  std::string out = std::string(kTrajectoryHeader) + "\n";
  for (std::size_t i = 0; i < table.t.size(); ++i) {
    const double cols[] = {table.t[i],
                           table.a[i].real(),
                           table.a[i].imag(),
                           std::abs(table.a[i]),
                           table.b[i].real(),
                           table.b[i].imag(),
                           std::abs(table.b[i]),
                           table.trace[i],
                           table.purity[i],
                           table.coherent_overlap[i]};
    for (std::size_t c = 0; c < std::size(cols); ++c) {
      if (c) out += ',';
      out += format_double(cols[c]);
    }
    out += '\n';
  }
  return out;
}

TrajectoryTable parse_trajectory_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("trajectory CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTrajectoryHeader) throw ConfigError("unexpected trajectory CSV header: " + line);
  TrajectoryTable t;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto f = split(line, ',');
    if (f.size() != 10) {
      throw ConfigError("trajectory CSV row " + std::to_string(row) + " has " + std::to_string(f.size()) +
                        " columns, expected 10");
    }
    t.t.push_back(to_double(f[0]));
    t.a.emplace_back(to_double(f[1]), to_double(f[2]));
    t.b.emplace_back(to_double(f[4]), to_double(f[5]));
    t.trace.push_back(to_double(f[7]));
    t.purity.push_back(to_double(f[8]));
    t.coherent_overlap.push_back(to_double(f[9]));
  }
  return t;
}

TrajectoryTable read_trajectory_csv(const std::filesystem::path& path) {
  return parse_trajectory_csv(read_file(path));
}

std::string wigner_grid_text(const WignerField& field) {
  const auto& g = field.grid;
  std::string out = format_double(g.x_min) + " " + format_double(g.x_max) + " " + std::to_string(g.nx) + "\n" +
                    format_double(g.p_min) + " " + format_double(g.p_max) + " " + std::to_string(g.np) + "\n";
  out.reserve(out.size() + field.values.size() * 17);
  for (std::size_t j = 0; j < g.np; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      if (i) out += ' ';
      out += format_double(field.at(i, j));
    }
    out += '\n';
  }
  return out;
}

WignerField parse_wigner_grid(const std::string& text) {
  std::istringstream in(text);
  WignerField f;
  auto& g = f.grid;
  if (!(in >> g.x_min >> g.x_max >> g.nx >> g.p_min >> g.p_max >> g.np)) {
    throw ConfigError("malformed Wigner grid header");
  }
  g.validate();
  f.values.resize(g.nx * g.np);
  for (auto& v : f.values) {
    if (!(in >> v)) throw ConfigError("Wigner grid file is truncated");
  }
  return f;
}

std::string summary_csv(const std::vector<SweepRow>& rows) {
  std::string out = "param,first_revival_ratio,n_peaks,regime\n";
  for (const auto& r : rows) {
    out += format_double(r.parameter) + "," + format_double(r.first_revival_ratio) + "," +
           std::to_string(r.n_peaks) + "," + to_string(r.regime) + "\n";
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  f << content;
  if (!f) throw Error("failed writing '" + path.string() + "'");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace optomem::io
