#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "apdlr/cfl.hpp"
#include "apdlr/errors.hpp"
#include "apdlr/grid.hpp"
#include "apdlr/lowrank.hpp"
#include "apdlr/operators.hpp"

namespace apdlr {

/// Everything a solver run needs, already discretized.
struct Problem {
  Grid grid;
  SigmaField sigma;
  FluxOperators ops;
  double eps;
  FullState initial;
  double t_end;
  double cfl_safety = 1.0;
  /// Density snapshots are taken at the first step whose time reaches each
  /// entry. The final state is always recorded.
  std::vector<double> output_times;
};

struct Snapshot {
  double requested_time = 0.0;
  double time = 0.0;
  std::size_t step = 0;
  Eigen::VectorXd rho;
  /// False for the final-state snapshot added at the end of a run.
  bool requested = true;
};

struct EnergySample {
  std::size_t step = 0;
  double t = 0.0;
  double e = 0.0;
  /// e^n - e^{n-1}; zero for the initial sample.
  double delta_e = 0.0;
};

struct Trajectory {
  CflReport cfl;
  std::vector<Snapshot> profiles;
  std::vector<EnergySample> energy;
  FullState final_state;
  std::optional<LowRankState> final_lowrank;
  std::size_t steps = 0;
};

/// A run aborted by a numerical failure. Carries what was recorded up to
/// the failing step so callers can still write the partial energy trace.
class SolverFailure : public NumericalError {
 public:
  SolverFailure(const NumericalError& cause, Trajectory partial)
      : NumericalError(cause), partial_(std::make_shared<Trajectory>(std::move(partial))) {}

  const Trajectory& partial() const { return *partial_; }

 private:
  std::shared_ptr<const Trajectory> partial_;
};

}  // namespace apdlr
