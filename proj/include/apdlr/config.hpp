#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apdlr/grid.hpp"

namespace apdlr {

enum class SolverKind { full, dlra, diffusion };
enum class InitialKind { plane_source, custom };

std::string_view to_string(SolverKind kind);
SolverKind parse_solver_kind(std::string_view name);
std::string_view to_string(InitialKind kind);
InitialKind parse_initial_kind(std::string_view name);

/// Run configuration. Text form is a flat key-value file with [physics],
/// [grid], [solver] and [output] sections, e.g.
///
///   [physics]
///   eps = 1e-5
///   sigma = 1
///   initial = "plane_source"
///   source_std = 0.03
///   [grid]
///   x_left = -1.5
///   x_right = 1.5
///   nx = 502
///   boundary = "vacuum"
///   [solver]
///   method = "dlra"
///   moments = 100
///   rank = 3
///   t_end = 0.2
///   [output]
///   directory = "out/case_b"
///   profile_times = [0.1, 0.2]
///
/// Unknown sections or keys are errors.
struct SolverConfig {
  // [physics]
  double eps = 1.0;
  /// Constant cross-section; ignored when sigma_file is set.
  double sigma = 1.0;
  /// CSV with header `x,sigma`, one row per interface.
  std::string sigma_file;
  InitialKind initial = InitialKind::plane_source;
  double source_std = 3e-2;
  /// Custom initial data: `x,rho` per midpoint and `x,g1,...,gN` per interface.
  std::string rho_file;
  std::string g_file;

  // [grid]
  double x_left = -1.5;
  double x_right = 1.5;
  long nx = 502;
  Boundary boundary = Boundary::vacuum;

  // [solver]
  SolverKind method = SolverKind::full;
  long moments = 100;
  long rank = 20;
  double t_end = 1.0;
  double cfl_safety = 1.0;
  bool concurrent_basis_update = true;

  // [output]
  std::string directory = "out";
  std::vector<double> profile_times;
  bool energy_trace = true;

  bool operator==(const SolverConfig&) const = default;
};

/// Parses the text form. Throws ConfigError with the offending line number.
SolverConfig parse_config(std::string_view text);

/// Reads and parses a config file; relative file paths inside it are
/// resolved against the file's directory. Throws ConfigError.
SolverConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const SolverConfig& config);

/// Range and consistency checks. Throws ConfigError. Returns warnings
/// (e.g. a CFL safety factor above one).
std::vector<std::string> validate(const SolverConfig& config);

}  // namespace apdlr
