#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "collatz/kernel.hpp"
#include "collatz/octave.hpp"

namespace collatz {

// Maximal run of base-7 even-octave steps (each one multiplies the octave
// index by 3/2 and consumes one factor of 2). A base-7 visit at odd octave is
// not an episode.
struct Episode {
  std::size_t start_index;  // tau
  Nat entry_value;
  Nat entry_octave;         // A at entry
  unsigned entry_v2;
  std::size_t length;       // t = number of consecutive 7->7 steps
  std::size_t exit_index;   // index of the first value after the run
};

std::vector<Episode> detect_episodes(const Trajectory& traj);

struct PersistenceBound {
  bool holds_le;  // t <= v2(entry A)
  bool holds_eq;  // t == v2(entry A)
};

PersistenceBound check_persistence_bound(const Episode& e);

// Exact identity (h_{n+t}+1) * 2^t == 3^t * (h_n+1) on every maximal run of
// consecutive odd-type steps.
struct OddRunCheck {
  std::size_t start_index;
  std::size_t length;
  bool holds;
};

std::vector<OddRunCheck> check_odd_run_identity(const Trajectory& traj);

// Exact form of the episode log-gain bound: the run multiplies h+1 by
// (3/2)^t with t <= v2(entry A). Checked entirely in integers.
bool log_gain_bound(const Trajectory& traj, const Episode& e);

struct DriftRecord {
  std::size_t episode_index;  // k (0-based pair index)
  Nat entry_A_prev;
  Nat entry_A_next;
  Rational ratio;             // A_{tau(k+1)} / A_{tau(k)}, exact
  int sign;                   // -1, 0, +1 compared with 1
};

std::vector<DriftRecord> return_drift(const Trajectory& traj);

struct ValuationViolation {
  std::size_t episode_index;
  Nat entry_A_prev;
  Nat entry_A_next;
  unsigned v2_prev;
  unsigned v2_next;
};

// Audits v2(A_next_entry) <= v2(A_entry) - 1 across consecutive episodes.
std::vector<ValuationViolation> episode_valuation_audit(const Trajectory& traj);

// ---- range sweep -----------------------------------------------------------

struct StartRecord {
  std::uint64_t h1 = 0;
  std::size_t steps = 0;  // m, values including the start
  bool terminated = false;
  Nat peak;
  std::size_t episode_count = 0;
  std::size_t max_episode_length = 0;
  std::size_t itinerary_violations = 0;
  bool telescoping_ok = false;
  bool convergence_ok = false;   // Eq. 17 identity (only meaningful when terminated)
  bool episode_bounds_ok = false;
  bool odd_runs_ok = false;
  std::size_t valuation_violations = 0;
};

struct RangeAuditReport {
  std::uint64_t lo = 0, hi = 0;
  std::size_t starts = 0;
  std::size_t terminated = 0;
  std::vector<std::uint64_t> cap_exhausted;
  std::size_t itinerary_violations = 0;
  std::size_t telescoping_failures = 0;
  std::size_t convergence_failures = 0;
  std::size_t episode_bound_failures = 0;
  std::size_t odd_run_failures = 0;
  std::size_t episodes_total = 0;
  std::size_t valuation_violations = 0;
  std::size_t max_episode_length = 0;
  Nat max_peak;
  std::uint64_t max_peak_start = 0;
  std::size_t max_steps = 0;
  std::uint64_t max_steps_start = 0;

  bool clean() const {
    return itinerary_violations == 0 && telescoping_failures == 0 &&
           convergence_failures == 0 && episode_bound_failures == 0 && odd_run_failures == 0;
  }
};

// Audits every start in [lo, hi]: trajectory, itinerary admissibility,
// telescoping and convergence identities, episode bounds, odd-run identities,
// valuation drift. Starts that exhaust the cap are listed, never counted as
// converged. `record_sink`, when set, receives one record per start in
// ascending h1 order.
RangeAuditReport range_audit(std::uint64_t lo, std::uint64_t hi,
                             std::size_t step_cap = kDefaultStepCap, unsigned jobs = 1,
                             const std::function<void(const StartRecord&)>& record_sink = {});

StartRecord audit_one(const Nat& h1, std::size_t step_cap = kDefaultStepCap);

std::string audit_summary(const RangeAuditReport& r);

// ---- log-profile emission ---------------------------------------------------

struct ProfileRow {
  std::size_t index;
  Nat h;
  int base;
  Nat octave;
  bool growth;  // odd-type step at this index (last row keeps the prior tag)
  bool kink;    // step type changed at this index
};

std::vector<ProfileRow> figure2_profile(const Nat& h1, std::size_t step_cap = kDefaultStepCap);

}  // namespace collatz
