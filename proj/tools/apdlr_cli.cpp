// Command-line front end: run, sweep and check-cfl subcommands.
// Exit codes: 0 success, 1 configuration or I/O error, 2 numerical failure.

#include <charconv>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "apdlr/benchmark.hpp"
#include "apdlr/cfl.hpp"
#include "apdlr/config.hpp"
#include "apdlr/errors.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kNumericalError = 2;

apdlr::SolverConfig load_checked(const std::string& path) {
  apdlr::SolverConfig config = apdlr::load_config(path);
  for (const auto& warning : apdlr::validate(config)) std::cerr << "warning: " << warning << '\n';
  return config;
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string item = text.substr(pos, comma - pos);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw apdlr::ConfigError("--values: cannot parse '" + item + "' as a number");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

int cmd_run(const std::string& config_path, const std::string& solver, const std::string& outdir) {
  apdlr::SolverConfig config = load_checked(config_path);
  if (!solver.empty()) config.method = apdlr::parse_solver_kind(solver);
  if (!outdir.empty()) config.directory = outdir;
  const apdlr::RunArtifacts art = apdlr::run(config);
  for (const auto& file : art.files) std::cout << file.string() << '\n';
  if (!art.completed) {
    std::cerr << "error: " << apdlr::to_string(art.solver) << " run failed";
    if (art.failure_step) std::cerr << " at step " << *art.failure_step;
    std::cerr << ": " << art.failure << '\n';
    return kNumericalError;
  }
  std::cerr << apdlr::to_string(art.solver) << ": " << art.trajectory.steps << " steps, dt "
            << art.trajectory.cfl.dt << ", " << art.wall_time_s << " s\n";
  return kOk;
}

int cmd_sweep(const std::string& config_path, const std::string& axis, const std::string& values,
              const std::string& outdir) {
  apdlr::SolverConfig config = load_checked(config_path);
  if (!outdir.empty()) config.directory = outdir;
  const auto points = apdlr::sweep(config, apdlr::parse_sweep_axis(axis), parse_values(values));
  int code = kOk;
  for (const auto& p : points) {
    std::cout << axis << '=' << p.value << ' ';
    if (p.comparison) {
      std::cout << "rel_l2=" << p.comparison->rel_l2 << " linf=" << p.comparison->linf;
    } else {
      std::cout << "failed: " << p.failure;
      code = kNumericalError;
    }
    std::cout << '\n';
  }
  std::cout << (std::filesystem::path(config.directory) / "sweep_summary.csv").string() << '\n';
  return code;
}

int cmd_check_cfl(const std::string& config_path) {
  const apdlr::SolverConfig config = load_checked(config_path);
  const apdlr::Problem problem = apdlr::make_problem(config);
  const double eps = config.method == apdlr::SolverKind::diffusion ? 0.0 : config.eps;
  const apdlr::CflReport r =
      apdlr::cfl_dt(problem.ops.quad, problem.ops.N, eps, problem.grid.dx(),
                    problem.sigma.sigma0(), config.cfl_safety);
  const nlohmann::json line = {{"dt", r.dt},
                               {"minimizing_k", r.minimizing_k},
                               {"mu_min", r.mu_min},
                               {"w_min", r.w_min},
                               {"hyperbolic_part", r.hyperbolic_part},
                               {"parabolic_part", r.parabolic_part},
                               {"safety", r.safety}};
  std::cout << line.dump() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Micro-macro kinetic solver with dynamical low-rank approximation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(apdlr::version()));

  std::string config_path, solver, outdir, axis, values;

  auto* run = app.add_subcommand("run", "Run one simulation and write its outputs");
  run->add_option("--config", config_path, "Configuration file")->required();
  run->add_option("--solver", solver, "Override the solver")
      ->check(CLI::IsMember({"full", "dlra", "diffusion"}));
  run->add_option("--output-dir", outdir, "Override the output directory");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep against a reference solver");
  sweep->add_option("--config", config_path, "Base configuration file")->required();
  sweep->add_option("--vary", axis, "Parameter to vary")
      ->required()
      ->check(CLI::IsMember({"eps", "rank"}));
  sweep->add_option("--values", values, "Comma-separated values")->required();
  sweep->add_option("--output-dir", outdir, "Override the output directory");

  auto* check = app.add_subcommand("check-cfl", "Print the time-step report as one JSON line");
  check->add_option("--config", config_path, "Configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, solver, outdir);
    if (sweep->parsed()) return cmd_sweep(config_path, axis, values, outdir);
    return cmd_check_cfl(config_path);
  } catch (const apdlr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const apdlr::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kConfigError;
  } catch (const apdlr::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  }
}
