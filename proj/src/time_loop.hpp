#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "apdlr/errors.hpp"
#include "apdlr/trajectory.hpp"

namespace apdlr::detail {

/// Collects energy samples and density snapshots as a run progresses.
class Recorder {
 public:
  Recorder(Trajectory& traj, std::vector<double> output_times, double t_end)
      : traj_(traj), pending_(std::move(output_times)), t_end_(t_end) {
    std::sort(pending_.begin(), pending_.end());
  }

  void observe(std::size_t step, double t, const Eigen::VectorXd& rho, double e) {
    const double delta = traj_.energy.empty() ? 0.0 : e - traj_.energy.back().e;
    traj_.energy.push_back({step, t, e, delta});
    while (next_ < pending_.size() && t >= pending_[next_]) {
      traj_.profiles.push_back({pending_[next_], t, step, rho});
      ++next_;
    }
  }

  void finish(std::size_t step, double t, const Eigen::VectorXd& rho) {
    const bool have_final = !traj_.profiles.empty() && traj_.profiles.back().step == step;
    if (!have_final) {
      traj_.profiles.push_back({t_end_, t, step, rho, false});
    }
    traj_.steps = step;
  }

 private:
  Trajectory& traj_;
  std::vector<double> pending_;
  std::size_t next_ = 0;
  double t_end_;
};

/// Fixed-step march from t0 to t_end; the last step is shortened so the
/// run lands on t_end exactly. `advance(h)` performs one step of size h and
/// `observe(n, t)` is called after it (and once before the first step).
/// Returns the number of steps taken.
template <typename Advance, typename Observe>
std::size_t march(double t0, double t_end, double dt, Advance&& advance, Observe&& observe) {
  std::size_t n = 0;
  double t = t0;
  observe(n, t);
  while (t < t_end) {
    const double remaining = t_end - t;
    const bool last = remaining <= dt * (1.0 + 1e-12);
    const double h = last ? remaining : dt;
    try {
      advance(h);
    } catch (const NumericalError& err) {
      throw err.at_step(n + 1);
    }
    ++n;
    t = last ? t_end : t0 + static_cast<double>(n) * dt;
    observe(n, t);
  }
  return n;
}

}  // namespace apdlr::detail
