#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "collatz/kernel.hpp"
#include "collatz/octave.hpp"

namespace collatz {

// The 16 parity-controlled selection rules: destination base for (B, s_a).
int next_base(int base, int s_a);

// One accelerated step in (B, A) coordinates.
BaseOctave step_base_octave(const BaseOctave& bo);

// Closed-form (B', A') for B in {1,2,4,6,7,8}; B in {3,5} delegates to
// step_base_octave (no closed form is stated for them).
BaseOctave closed_form_update(int base, const Nat& octave);

struct BaseEdge {
  int from;
  int octave_parity;  // s_a of the source
  int to;
};

struct BaseGraph {
  std::array<BaseEdge, 16> edges;

  std::vector<BaseEdge> edges_from(int base) const;
  int out_degree(int base) const;
  std::vector<BaseEdge> self_loops() const;
};

BaseGraph build_base_graph();

// DOT digraph with parity recorded as an edge attribute (parity="odd"|"even").
std::string to_dot(const BaseGraph& g);

struct ItineraryViolation {
  std::size_t index;  // position i of the offending pair (i, i+1)
  Nat h;
  int from_base;
  int octave_parity;
  int expected_base;
  int actual_base;
};

// Checks every consecutive pair of a trajectory against next_base.
// Violations are data, not exceptions; an empty result means fully admissible.
std::vector<ItineraryViolation> validate_itinerary(const Trajectory& traj);

// Same check for an arbitrary value sequence (used by the table validators).
std::vector<ItineraryViolation> validate_value_sequence(const std::vector<Nat>& values);

}  // namespace collatz
