#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "apdlr/config.hpp"
#include "apdlr/trajectory.hpp"

namespace apdlr {

/// Version string recorded in run metadata ("0.1.0-g<describe>").
std::string_view version();

/// Isotropic Gaussian pulse: rho_j = exp(-x_j^2 / (2 std^2)) / (sqrt(2 pi) std)
/// at the midpoints, g = 0 with `moments` columns.
FullState plane_source_initial(const Grid& grid, double std_dev, std::size_t moments);

/// Discretizes a validated configuration. Reads sigma_file, rho_file and
/// g_file when set (IoError / ConfigError on bad contents).
Problem make_problem(const SolverConfig& config);

/// Dispatches to the configured solver without writing anything. Numerical
/// failures propagate as SolverFailure.
Trajectory solve(const Problem& problem, const SolverConfig& config);

struct ComparisonResult {
  /// sqrt(sum (a-b)^2 dx) / sqrt(sum b^2 dx); relative to the second profile.
  double rel_l2 = 0.0;
  double linf = 0.0;
  /// max_n (e_A^n - e_B^n), present only when both traces have the same
  /// step count and sample times.
  std::optional<double> energy_gap;
};

/// Throws std::invalid_argument when the profiles do not match the grid.
ComparisonResult compare(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Grid& grid);
ComparisonResult compare(const Trajectory& a, const Trajectory& b, const Grid& grid);

struct RunArtifacts {
  SolverKind solver = SolverKind::full;
  bool completed = false;
  std::string failure;
  std::optional<std::size_t> failure_step;
  /// Partial when the run failed.
  Trajectory trajectory;
  double wall_time_s = 0.0;
  std::vector<std::filesystem::path> files;
};

/// Validates, solves, and writes into config.directory:
///   <solver>_rho_final.csv, <solver>_rho_<k>.csv per profile time,
///   <solver>_energy.csv (when energy_trace is on), <solver>_metadata.txt.
/// A numerical blow-up is not thrown; it is recorded in the metadata and
/// in RunArtifacts::failure. ConfigError and IoError propagate.
RunArtifacts run(const SolverConfig& config);

enum class SweepAxis { eps, rank };
std::string_view to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(std::string_view name);

struct SweepPoint {
  std::size_t index = 0;
  double value = 0.0;
  SolverKind solver = SolverKind::full;
  SolverKind reference = SolverKind::full;
  CflReport cfl;
  std::optional<ComparisonResult> comparison;
  bool completed = false;
  std::string failure;
};

/// Solver whose output a sweep point is compared against: the full system
/// for dlra and diffusion runs, the diffusion limit for full runs.
SolverKind reference_solver(SolverKind solver);

/// Runs one point per value, varying eps or the DLRA rank (a rank sweep
/// always uses the dlra solver and shares a single full reference). Points
/// write into <directory>/point_<i>/ and run concurrently; the results are
/// collected into <directory>/sweep_summary.csv. Failed points are recorded
/// and do not stop the sweep.
std::vector<SweepPoint> sweep(const SolverConfig& base, SweepAxis axis,
                              const std::vector<double>& values);

}  // namespace apdlr
