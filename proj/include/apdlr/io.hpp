#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "apdlr/trajectory.hpp"

namespace apdlr {

// Output formats:
//   profile CSV  `x,rho`, one row per midpoint
//   energy CSV   `step,t,e,delta_e`, one row per step
//   metadata     `key = value` lines
// Numbers are written with 17 significant digits. All functions throw
// IoError naming the path on failure.

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Column by header name; throws IoError when missing.
  Eigen::VectorXd column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

void write_profile_csv(const std::filesystem::path& path, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& rho);
void write_energy_csv(const std::filesystem::path& path, const std::vector<EnergySample>& trace);
/// Interface field with header `x,g1,...,gN`.
void write_moment_csv(const std::filesystem::path& path, const Eigen::VectorXd& x,
                      const Eigen::MatrixXd& g);

struct Profile {
  Eigen::VectorXd x;
  Eigen::VectorXd rho;
};
Profile read_profile_csv(const std::filesystem::path& path);
std::vector<EnergySample> read_energy_csv(const std::filesystem::path& path);

using Metadata = std::vector<std::pair<std::string, std::string>>;
void write_metadata(const std::filesystem::path& path, const Metadata& entries);
Metadata read_metadata(const std::filesystem::path& path);

}  // namespace apdlr
