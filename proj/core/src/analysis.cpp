#include "collatz/analysis.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "collatz/rules.hpp"

namespace collatz {

std::vector<Episode> detect_episodes(const Trajectory& traj) {
  std::vector<Episode> out;
  const auto& vs = traj.values;
  std::size_t i = 0;
  while (i < vs.size()) {
    BaseOctave bo = to_base_octave(vs[i]);
    if (bo.base == 7 && (bo.octave & 1) == 0) {
      std::size_t j = i;
      while (j < vs.size()) {
        BaseOctave cur = to_base_octave(vs[j]);
        if (cur.base != 7 || (cur.octave & 1) != 0) break;
        ++j;
      }
      Episode e;
      e.start_index = i;
      e.entry_value = vs[i];
      e.entry_octave = bo.octave;
      e.entry_v2 = v2(bo.octave);
      e.length = j - i;
      e.exit_index = j;
      out.push_back(std::move(e));
      i = j;
    } else {
      ++i;
    }
  }
  return out;
}

PersistenceBound check_persistence_bound(const Episode& e) {
  PersistenceBound b;
  b.holds_le = e.length <= e.entry_v2;
  b.holds_eq = e.length == e.entry_v2;
  return b;
}

std::vector<OddRunCheck> check_odd_run_identity(const Trajectory& traj) {
  std::vector<OddRunCheck> out;
  const auto& vs = traj.values;
  if (vs.size() < 2) return out;
  std::size_t i = 0;
  const std::size_t last_step = vs.size() - 1;  // steps exist at indices < last_step
  while (i < last_step) {
    if ((vs[i] & 1) == 1) {
      std::size_t j = i;
      while (j < last_step && (vs[j] & 1) == 1) ++j;
      std::size_t t = j - i;
      // (h_{n+t} + 1) * 2^t == 3^t * (h_n + 1)
      Nat lhs = (vs[j] + 1) << static_cast<unsigned>(t);
      Nat rhs = (vs[i] + 1);
      for (std::size_t c = 0; c < t; ++c) rhs *= 3;
      out.push_back({i, t, lhs == rhs});
      i = j;
    } else {
      ++i;
    }
  }
  return out;
}

bool log_gain_bound(const Trajectory& traj, const Episode& e) {
  if (e.length == 0) return true;  // vacuous
  if (e.exit_index >= traj.values.size())
    throw std::invalid_argument("log_gain_bound: episode exceeds trajectory");
  if (e.length > e.entry_v2) return false;
  Nat lhs = (traj.values[e.exit_index] + 1) << static_cast<unsigned>(e.length);
  Nat rhs = traj.values[e.start_index] + 1;
  for (std::size_t c = 0; c < e.length; ++c) rhs *= 3;
  return lhs == rhs;
}

std::vector<DriftRecord> return_drift(const Trajectory& traj) {
  std::vector<DriftRecord> out;
  auto eps = detect_episodes(traj);
  for (std::size_t k = 0; k + 1 < eps.size(); ++k) {
    DriftRecord d;
    d.episode_index = k;
    d.entry_A_prev = eps[k].entry_octave;
    d.entry_A_next = eps[k + 1].entry_octave;
    d.ratio = Rational(eps[k + 1].entry_octave, eps[k].entry_octave);
    d.sign = d.ratio < 1 ? -1 : (d.ratio == 1 ? 0 : 1);
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<ValuationViolation> episode_valuation_audit(const Trajectory& traj) {
  std::vector<ValuationViolation> out;
  auto eps = detect_episodes(traj);
  for (std::size_t k = 0; k + 1 < eps.size(); ++k) {
    // audited claim: v2(A_next_entry) <= v2(A_entry) - 1
    if (!(eps[k + 1].entry_v2 + 1 <= eps[k].entry_v2)) {
      out.push_back({k, eps[k].entry_octave, eps[k + 1].entry_octave, eps[k].entry_v2,
                     eps[k + 1].entry_v2});
    }
  }
  return out;
}

StartRecord audit_one(const Nat& h1, std::size_t step_cap) {
  Trajectory traj = run_trajectory(h1, step_cap);
  StartRecord r;
  r.h1 = h1 <= std::numeric_limits<std::uint64_t>::max()
             ? static_cast<std::uint64_t>(h1)
             : 0;  // callers with huge starts keep their own key
  r.steps = traj.length();
  r.terminated = traj.terminated();
  r.peak = *std::max_element(traj.values.begin(), traj.values.end());

  auto eps = detect_episodes(traj);
  r.episode_count = eps.size();
  r.episode_bounds_ok = true;
  for (const auto& e : eps) {
    r.max_episode_length = std::max(r.max_episode_length, e.length);
    if (!check_persistence_bound(e).holds_eq || !log_gain_bound(traj, e))
      r.episode_bounds_ok = false;
  }
  r.valuation_violations = episode_valuation_audit(traj).size();

  r.itinerary_violations = traj.values.size() >= 2 ? validate_itinerary(traj).size() : 0;

  NetChangeReport nc = net_change(traj);
  r.telescoping_ok = (nc.delta_all == traj.values.back() - traj.values.front());
  r.convergence_ok = traj.terminated() && check_convergence_identity(traj).holds;

  r.odd_runs_ok = true;
  for (const auto& c : check_odd_run_identity(traj))
    if (!c.holds) r.odd_runs_ok = false;
  return r;
}

namespace {

void merge_into(RangeAuditReport& agg, const StartRecord& r) {
  agg.starts++;
  if (r.terminated)
    agg.terminated++;
  else
    agg.cap_exhausted.push_back(r.h1);
  agg.itinerary_violations += r.itinerary_violations;
  if (!r.telescoping_ok) agg.telescoping_failures++;
  if (r.terminated && !r.convergence_ok) agg.convergence_failures++;
  if (!r.episode_bounds_ok) agg.episode_bound_failures++;
  if (!r.odd_runs_ok) agg.odd_run_failures++;
  agg.episodes_total += r.episode_count;
  agg.valuation_violations += r.valuation_violations;
  agg.max_episode_length = std::max(agg.max_episode_length, r.max_episode_length);
  if (r.peak > agg.max_peak) {
    agg.max_peak = r.peak;
    agg.max_peak_start = r.h1;
  }
  if (r.steps > agg.max_steps) {
    agg.max_steps = r.steps;
    agg.max_steps_start = r.h1;
  }
}

}  // namespace

RangeAuditReport range_audit(std::uint64_t lo, std::uint64_t hi, std::size_t step_cap,
                             unsigned jobs, const std::function<void(const StartRecord&)>& sink) {
  if (lo < 1 || lo > hi) throw std::invalid_argument("range_audit: need 1 <= lo <= hi");
  RangeAuditReport agg;
  agg.lo = lo;
  agg.hi = hi;

  const std::uint64_t n = hi - lo + 1;
  if (jobs <= 1 || n < 256) {
    for (std::uint64_t h = lo; h <= hi; ++h) {
      StartRecord r = audit_one(Nat(h), step_cap);
      if (sink) sink(r);
      merge_into(agg, r);
    }
    return agg;
  }

  unsigned workers = std::min<std::uint64_t>(jobs, n);
  std::vector<std::vector<StartRecord>> chunks(workers);
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      std::uint64_t begin = lo + n * w / workers;
      std::uint64_t end = lo + n * (w + 1) / workers;  // exclusive
      auto& bucket = chunks[w];
      bucket.reserve(static_cast<std::size_t>(end - begin));
      for (std::uint64_t h = begin; h < end; ++h) bucket.push_back(audit_one(Nat(h), step_cap));
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& bucket : chunks)
    for (const auto& r : bucket) {
      if (sink) sink(r);
      merge_into(agg, r);
    }
  return agg;
}

std::string audit_summary(const RangeAuditReport& r) {
  std::ostringstream os;
  os << "range [" << r.lo << "," << r.hi << "]: " << r.starts << " starts, " << r.terminated
     << " terminated, " << r.cap_exhausted.size() << " cap-exhausted\n";
  os << "itinerary violations: " << r.itinerary_violations << "\n";
  os << "telescoping failures: " << r.telescoping_failures << "\n";
  os << "convergence-identity failures: " << r.convergence_failures << "\n";
  os << "episode-bound failures: " << r.episode_bound_failures << "\n";
  os << "odd-run identity failures: " << r.odd_run_failures << "\n";
  os << "episodes: " << r.episodes_total << " (max length " << r.max_episode_length << ")\n";
  os << "valuation-drift violations (v2 not strictly decreasing across episodes): "
     << r.valuation_violations << "\n";
  os << "peak value " << r.max_peak << " at h1=" << r.max_peak_start << "; longest trajectory "
     << r.max_steps << " values at h1=" << r.max_steps_start << "\n";
  return os.str();
}

std::vector<ProfileRow> figure2_profile(const Nat& h1, std::size_t step_cap) {
  Trajectory traj = run_trajectory(h1, step_cap);
  std::vector<ProfileRow> out;
  out.reserve(traj.values.size());
  bool prev_growth = false;
  for (std::size_t i = 0; i < traj.values.size(); ++i) {
    const Nat& h = traj.values[i];
    BaseOctave bo = to_base_octave(h);
    bool has_step = i + 1 < traj.values.size();
    bool growth = has_step ? ((h & 1) == 1) : prev_growth;
    bool kink = has_step && i > 0 && growth != prev_growth;
    out.push_back({i, h, bo.base, bo.octave, growth, kink});
    prev_growth = growth;
  }
  return out;
}

}  // namespace collatz
