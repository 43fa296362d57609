#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "collatz/nat.hpp"

namespace collatz {

// h = 2k + s with s the parity bit.
struct StepDecomposition {
  Nat h;
  Nat k;
  int s;
};

// Accelerated map: h/2 for even h, (3h+1)/2 for odd h.
Nat step(const Nat& h);

// Fixed-width fast path. Returns nullopt instead of wrapping when 3h+1
// would overflow 64 bits.
std::optional<std::uint64_t> step_checked(std::uint64_t h);

StepDecomposition decompose_parity(const Nat& h);

enum class TrajectoryStatus { Terminated, CapExhausted };

struct Trajectory {
  Nat start;
  std::vector<Nat> values;  // starts with `start`; if terminated, ends at the first 1
  TrajectoryStatus status = TrajectoryStatus::Terminated;

  bool terminated() const { return status == TrajectoryStatus::Terminated; }
  std::size_t length() const { return values.size(); }  // m
};

inline constexpr std::size_t kDefaultStepCap = 1'000'000;

// Iterates `step` from h1 until the first value 1 (inclusive) or until
// step_cap values have been emitted. Cap exhaustion is a status, not an error.
Trajectory run_trajectory(const Nat& h1, std::size_t step_cap = kDefaultStepCap);

// Cumulative net-change bookkeeping over i = 1..m-1.
struct NetChangeReport {
  Nat delta_even;  // sum over even h_i of -k_i
  Nat delta_odd;   // sum over odd h_i of k_i + 1
  Nat delta_all;   // delta_even + delta_odd; telescopes to h_m - h_1
  Nat sum_k;       // sum of k_i over all steps
  Nat sum_hs;      // sum of h_i over odd steps
};

NetChangeReport net_change(const Trajectory& traj);

struct ConvergenceCheck {
  bool holds;
  Nat residual;  // (h1 - 1) - (sum_k - sum_hs), exactly
};

// Requires a terminated trajectory; throws std::invalid_argument otherwise.
ConvergenceCheck check_convergence_identity(const Trajectory& traj);

}  // namespace collatz
