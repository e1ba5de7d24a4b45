#include "apdlr/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <future>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "apdlr/diffusion.hpp"
#include "apdlr/dlra.hpp"
#include "apdlr/errors.hpp"
#include "apdlr/full_solver.hpp"
#include "apdlr/io.hpp"
#include "format.hpp"

#ifndef APDLR_VERSION
#define APDLR_VERSION "0.1.0"
#endif

namespace apdlr {

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Eigen::VectorXd tabulated_column(const std::filesystem::path& path, const std::string& column,
                                Eigen::Index expected) {
  const CsvTable table = read_csv(path);
  Eigen::VectorXd values = table.column(column);
  if (values.size() != expected) {
    throw ConfigError(path.string() + ": expected " + std::to_string(expected) + " rows, got " +
                      std::to_string(values.size()));
  }
  return values;
}

FullState custom_initial(const SolverConfig& c, const Grid& grid) {
  Eigen::VectorXd rho = tabulated_column(c.rho_file, "rho", grid.nx());
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(grid.interface_count(), c.moments);
  if (!c.g_file.empty()) {
    const CsvTable table = read_csv(c.g_file);
    if (static_cast<Eigen::Index>(table.rows.size()) != grid.interface_count()) {
      throw ConfigError(c.g_file + ": expected " + std::to_string(grid.interface_count()) +
                        " rows (one per interface)");
    }
    for (long k = 0; k < c.moments; ++k) {
      g.col(k) = table.column("g" + std::to_string(k + 1));
    }
  }
  try {
    return FullState(std::move(rho), std::move(g));
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("custom initial data: ") + err.what());
  }
}

Metadata describe(const SolverConfig& c, const RunArtifacts& art) {
  const Trajectory& tr = art.trajectory;
  Metadata m;
  m.emplace_back("solver", std::string(to_string(art.solver)));
  m.emplace_back("status", art.completed ? "completed" : "failed");
  if (!art.completed) {
    m.emplace_back("failure_step", art.failure_step ? std::to_string(*art.failure_step) : "unknown");
    m.emplace_back("failure_message", art.failure);
  }
  m.emplace_back("version", std::string(version()));
  m.emplace_back("timestamp", utc_timestamp());
  m.emplace_back("wall_time_s", format_double(art.wall_time_s));
  m.emplace_back("steps", std::to_string(tr.steps));
  m.emplace_back("dt", format_double(tr.cfl.dt));
  m.emplace_back("cfl_minimizing_k", std::to_string(tr.cfl.minimizing_k));
  m.emplace_back("cfl_mu_min", format_double(tr.cfl.mu_min));
  m.emplace_back("cfl_w_min", format_double(tr.cfl.w_min));
  m.emplace_back("cfl_hyperbolic_part", format_double(tr.cfl.hyperbolic_part));
  m.emplace_back("cfl_parabolic_part", format_double(tr.cfl.parabolic_part));
  m.emplace_back("cfl_safety", format_double(tr.cfl.safety));
  m.emplace_back("eps", format_double(c.eps));
  m.emplace_back("sigma", c.sigma_file.empty() ? format_double(c.sigma) : c.sigma_file);
  m.emplace_back("initial", std::string(to_string(c.initial)));
  if (c.initial == InitialKind::plane_source) {
    m.emplace_back("source_std", format_double(c.source_std));
  }
  m.emplace_back("x_left", format_double(c.x_left));
  m.emplace_back("x_right", format_double(c.x_right));
  m.emplace_back("nx", std::to_string(c.nx));
  m.emplace_back("boundary", std::string(to_string(c.boundary)));
  m.emplace_back("moments", std::to_string(c.moments));
  if (art.solver == SolverKind::dlra) m.emplace_back("rank", std::to_string(c.rank));
  m.emplace_back("t_end", format_double(c.t_end));
  std::size_t k = 0;
  for (const Snapshot& s : tr.profiles) {
    if (!s.requested) continue;
    m.emplace_back("profile_" + std::to_string(k++),
                   "requested=" + format_double(s.requested_time) +
                       " actual=" + format_double(s.time) + " step=" + std::to_string(s.step));
  }
  return m;
}

std::vector<std::filesystem::path> write_outputs(const SolverConfig& c, const Grid& grid,
                                                 const RunArtifacts& art) {
  const std::filesystem::path dir = c.directory;
  const std::string prefix(to_string(art.solver));
  const Eigen::VectorXd x = grid.midpoints();
  const Trajectory& tr = art.trajectory;
  std::vector<std::filesystem::path> files;

  std::size_t k = 0;
  for (const Snapshot& s : tr.profiles) {
    if (!s.requested) continue;
    const auto path = dir / (prefix + "_rho_" + std::to_string(k++) + ".csv");
    write_profile_csv(path, x, s.rho);
    files.push_back(path);
  }
  if (art.completed) {
    const auto path = dir / (prefix + "_rho_final.csv");
    write_profile_csv(path, x, tr.final_state.rho);
    files.push_back(path);
  }
  if (c.energy_trace) {
    const auto path = dir / (prefix + "_energy.csv");
    write_energy_csv(path, tr.energy);
    files.push_back(path);
  }
  const auto meta = dir / (prefix + "_metadata.txt");
  write_metadata(meta, describe(c, art));
  files.push_back(meta);
  return files;
}

}  // namespace

std::string_view version() { return APDLR_VERSION; }

FullState plane_source_initial(const Grid& grid, double std_dev, std::size_t moments) {
  if (!(std_dev > 0.0)) throw std::invalid_argument("plane_source_initial: std must be positive");
  const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * std_dev);
  Eigen::VectorXd rho(grid.nx());
  for (Eigen::Index j = 0; j < grid.nx(); ++j) {
    const double x = grid.midpoint(j);
    rho(j) = norm * std::exp(-x * x / (2.0 * std_dev * std_dev));
  }
  return FullState(std::move(rho),
                   Eigen::MatrixXd::Zero(grid.interface_count(), static_cast<Eigen::Index>(moments)));
}

Problem make_problem(const SolverConfig& c) {
  Grid grid(c.x_left, c.x_right, c.nx, c.boundary);
  SigmaField sigma = c.sigma_file.empty()
                         ? SigmaField(grid, c.sigma)
                         : SigmaField(grid, tabulated_column(c.sigma_file, "sigma",
                                                            grid.interface_count()));
  FluxOperators ops = build_operators(static_cast<std::size_t>(c.moments));
  FullState initial = c.initial == InitialKind::plane_source
                          ? plane_source_initial(grid, c.source_std, ops.N)
                          : custom_initial(c, grid);
  return Problem{std::move(grid), std::move(sigma), std::move(ops), c.eps, std::move(initial),
                 c.t_end,         c.cfl_safety,     c.profile_times};
}

Trajectory solve(const Problem& problem, const SolverConfig& c) {
  switch (c.method) {
    case SolverKind::full:
      return run_full(problem);
    case SolverKind::dlra:
      return run_dlra(problem, c.rank, DlraOptions{c.concurrent_basis_update});
    case SolverKind::diffusion:
      return run_diffusion(problem);
  }
  throw std::logic_error("solve: unknown solver");
}

ComparisonResult compare(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Grid& grid) {
  if (a.size() != grid.nx() || b.size() != grid.nx()) {
    throw std::invalid_argument("compare: profiles do not match the grid (" +
                                std::to_string(a.size()) + ", " + std::to_string(b.size()) +
                                " vs nx=" + std::to_string(grid.nx()) + ")");
  }
  ComparisonResult out;
  const Eigen::VectorXd diff = a - b;
  out.linf = diff.size() ? diff.cwiseAbs().maxCoeff() : 0.0;
  const double num = std::sqrt(diff.squaredNorm() * grid.dx());
  const double den = std::sqrt(b.squaredNorm() * grid.dx());
  if (num == 0.0) {
    out.rel_l2 = 0.0;
  } else {
    out.rel_l2 = den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
  }
  return out;
}

ComparisonResult compare(const Trajectory& a, const Trajectory& b, const Grid& grid) {
  ComparisonResult out = compare(a.final_state.rho, b.final_state.rho, grid);
  if (a.energy.size() == b.energy.size() && !a.energy.empty()) {
    double gap = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < a.energy.size(); ++n) {
      const double ta = a.energy[n].t;
      const double tb = b.energy[n].t;
      if (std::abs(ta - tb) > 1e-12 * std::max(1.0, std::abs(tb))) return out;
      gap = std::max(gap, a.energy[n].e - b.energy[n].e);
    }
    out.energy_gap = gap;
  }
  return out;
}

RunArtifacts run(const SolverConfig& config) {
  validate(config);
  const Problem problem = make_problem(config);
  RunArtifacts art;
  art.solver = config.method;
  const auto start = std::chrono::steady_clock::now();
  try {
    art.trajectory = solve(problem, config);
    art.completed = true;
  } catch (const SolverFailure& failure) {
    art.trajectory = failure.partial();
    art.failure = failure.what();
    art.failure_step = failure.step();
  }
  art.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  art.files = write_outputs(config, problem.grid, art);
  return art;
}

std::string_view to_string(SweepAxis axis) { return axis == SweepAxis::eps ? "eps" : "rank"; }

SweepAxis parse_sweep_axis(std::string_view name) {
  if (name == "eps") return SweepAxis::eps;
  if (name == "rank") return SweepAxis::rank;
  throw ConfigError("unknown sweep axis '" + std::string(name) + "' (expected eps or rank)");
}

SolverKind reference_solver(SolverKind solver) {
  return solver == SolverKind::full ? SolverKind::diffusion : SolverKind::full;
}

std::vector<SweepPoint> sweep(const SolverConfig& base, SweepAxis axis,
                              const std::vector<double>& values) {
  if (values.empty()) throw ConfigError("sweep: value list is empty");
  const std::filesystem::path root = base.directory;

  std::vector<SolverConfig> configs;
  for (std::size_t i = 0; i < values.size(); ++i) {
    SolverConfig c = base;
    c.directory = (root / ("point_" + std::to_string(i))).string();
    if (axis == SweepAxis::eps) {
      c.eps = values[i];
    } else {
      if (values[i] != std::floor(values[i])) {
        throw ConfigError("sweep: rank values must be integers, got " + format_double(values[i]));
      }
      c.method = SolverKind::dlra;
      c.rank = static_cast<long>(values[i]);
    }
    validate(c);
    configs.push_back(std::move(c));
  }

  // A rank sweep compares every point against the same full run.
  std::optional<RunArtifacts> shared_reference;
  if (axis == SweepAxis::rank) {
    SolverConfig ref = base;
    ref.method = reference_solver(SolverKind::dlra);
    ref.directory = (root / "reference").string();
    shared_reference = run(ref);
  }

  auto run_point = [&](std::size_t i) {
    const SolverConfig& c = configs[i];
    SweepPoint point;
    point.index = i;
    point.value = values[i];
    point.solver = c.method;
    point.reference = reference_solver(c.method);
    const RunArtifacts art = run(c);
    point.cfl = art.trajectory.cfl;
    point.completed = art.completed;
    point.failure = art.failure;
    std::optional<RunArtifacts> local_reference;
    if (!shared_reference) {
      SolverConfig ref = c;
      ref.method = point.reference;
      ref.directory = (std::filesystem::path(c.directory) / "reference").string();
      local_reference = run(ref);
    }
    const RunArtifacts& reference = shared_reference ? *shared_reference : *local_reference;
    if (art.completed && reference.completed) {
      point.comparison = compare(art.trajectory, reference.trajectory, make_problem(c).grid);
    } else if (art.completed) {
      point.failure = "reference " + std::string(to_string(point.reference)) +
                      " run failed: " + reference.failure;
    }
    return point;
  };

  const std::size_t batch = std::max(1u, std::thread::hardware_concurrency());
  std::vector<SweepPoint> points;
  for (std::size_t start = 0; start < configs.size(); start += batch) {
    std::vector<std::future<SweepPoint>> pending;
    const std::size_t stop = std::min(configs.size(), start + batch);
    for (std::size_t i = start; i < stop; ++i) {
      pending.push_back(std::async(std::launch::async, run_point, i));
    }
    for (auto& f : pending) points.push_back(f.get());
  }

  const auto summary = root / "sweep_summary.csv";
  std::filesystem::create_directories(root);
  std::ofstream out(summary, std::ios::binary);
  if (!out) throw IoError("cannot open " + summary.string() + " for writing");
  out << "index,parameter,value,solver,reference,dt,mu_min,w_min,hyperbolic_part,parabolic_part,"
         "rel_l2,linf,energy_gap,status\n";
  for (const SweepPoint& p : points) {
    const auto opt = [](const std::optional<double>& v) {
      return v ? format_sig17(*v) : std::string("nan");
    };
    std::optional<double> rel, linf, gap;
    if (p.comparison) {
      rel = p.comparison->rel_l2;
      linf = p.comparison->linf;
      gap = p.comparison->energy_gap;
    }
    out << p.index << ',' << to_string(axis) << ',' << format_sig17(p.value) << ','
        << to_string(p.solver) << ',' << to_string(p.reference) << ',' << format_sig17(p.cfl.dt)
        << ',' << format_sig17(p.cfl.mu_min) << ',' << format_sig17(p.cfl.w_min) << ','
        << format_sig17(p.cfl.hyperbolic_part) << ',' << format_sig17(p.cfl.parabolic_part) << ','
        << opt(rel) << ',' << opt(linf) << ',' << opt(gap) << ','
        << (p.completed && p.comparison ? "ok" : "failed") << '\n';
  }
  out.flush();
  if (!out) throw IoError("write to " + summary.string() + " failed");
  return points;
}

}  // namespace apdlr
