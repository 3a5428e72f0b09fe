#pragma once

// File formats written and read by the harness. Every floating-point value
// is printed with '%.9e' so repeated runs produce byte-identical files.

#include <filesystem>
#include <string>
#include <vector>

#include "optomem/evolve.hpp"
#include "optomem/revival.hpp"
#include "optomem/wigner.hpp"

namespace optomem::io {

std::string format_double(double v);

/// Column layout of a trajectory CSV.
inline constexpr const char* kTrajectoryHeader =
    "t,re_a,im_a,abs_a,re_b,im_b,abs_b,trace,purity,coherent_overlap";

/// Column data of a trajectory CSV. `b` is all zeros for single-mode runs.
struct TrajectoryTable {
  std::vector<double> t;
  std::vector<cplx> a;
  std::vector<cplx> b;
  std::vector<double> trace;
  std::vector<double> purity;
  std::vector<double> coherent_overlap;
};

/// Mode 0 goes to the a columns and mode 1 (if present) to the b columns.
/// A missing coherent overlap is written as nan.
TrajectoryTable to_table(const Trajectory& traj);

std::string trajectory_csv(const TrajectoryTable& table);
TrajectoryTable parse_trajectory_csv(const std::string& text);
TrajectoryTable read_trajectory_csv(const std::filesystem::path& path);

/// Two header lines "x_min x_max nx" and "p_min p_max np", then np rows of nx
/// values (row j holds W(x_i, p_j)).
std::string wigner_grid_text(const WignerField& field);
WignerField parse_wigner_grid(const std::string& text);

std::string summary_csv(const std::vector<SweepRow>& rows);

/// Rounds through '%.9e' so JSON numbers carry the same precision as the CSVs.
double rounded(double v);

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace optomem::io
