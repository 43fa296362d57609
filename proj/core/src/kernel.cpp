#include "collatz/kernel.hpp"

#include <limits>
#include <stdexcept>

namespace collatz {

namespace {
void require_positive(const Nat& h, const char* who) {
  if (h < 1) throw std::invalid_argument(std::string(who) + ": iterate must be >= 1");
}
}  // namespace

Nat step(const Nat& h) {
  require_positive(h, "step");
  if ((h & 1) == 0) return h >> 1;
  return (3 * h + 1) >> 1;
}

std::optional<std::uint64_t> step_checked(std::uint64_t h) {
  if (h == 0) throw std::invalid_argument("step_checked: iterate must be >= 1");
  if ((h & 1) == 0) return h >> 1;
  if (h > (std::numeric_limits<std::uint64_t>::max() - 1) / 3) return std::nullopt;
  return (3 * h + 1) >> 1;
}

StepDecomposition decompose_parity(const Nat& h) {
  require_positive(h, "decompose_parity");
  StepDecomposition d;
  d.h = h;
  d.k = h >> 1;
  d.s = static_cast<int>(h & 1);
  return d;
}

Trajectory run_trajectory(const Nat& h1, std::size_t step_cap) {
  require_positive(h1, "run_trajectory");
  if (step_cap < 1) throw std::invalid_argument("run_trajectory: step_cap must be >= 1");
  Trajectory t;
  t.start = h1;
  t.values.reserve(h1 > 1'000'000 ? 64 : 256);
  Nat h = h1;
  t.values.push_back(h);
  while (h != 1 && t.values.size() < step_cap) {
    h = step(h);
    t.values.push_back(h);
  }
  t.status = (h == 1) ? TrajectoryStatus::Terminated : TrajectoryStatus::CapExhausted;
  return t;
}

NetChangeReport net_change(const Trajectory& traj) {
  if (traj.values.empty()) throw std::invalid_argument("net_change: trajectory must have m >= 1 values");
  NetChangeReport r{0, 0, 0, 0, 0};
  for (std::size_t i = 0; i + 1 < traj.values.size(); ++i) {
    const Nat& h = traj.values[i];
    Nat k = h >> 1;
    r.sum_k += k;
    if ((h & 1) == 0) {
      r.delta_even -= k;
    } else {
      r.delta_odd += k + 1;
      r.sum_hs += h;
    }
  }
  r.delta_all = r.delta_even + r.delta_odd;
  return r;
}

ConvergenceCheck check_convergence_identity(const Trajectory& traj) {
  if (!traj.terminated())
    throw std::invalid_argument("check_convergence_identity: trajectory did not terminate");
  NetChangeReport r = net_change(traj);
  ConvergenceCheck c;
  c.residual = (traj.values.front() - 1) - (r.sum_k - r.sum_hs);
  c.holds = (c.residual == 0);
  return c;
}

}  // namespace collatz
