#pragma once

#include <cstdint>

#include "collatz/nat.hpp"

namespace collatz {

// h = B + 8(A - 1) with B in 1..8 and A >= 1.
struct BaseOctave {
  int base;    // B
  Nat octave;  // A

  friend bool operator==(const BaseOctave& a, const BaseOctave& b) {
    return a.base == b.base && a.octave == b.octave;
  }
};

BaseOctave to_base_octave(const Nat& h);
Nat from_base_octave(const BaseOctave& bo);  // rejects B outside 1..8 or A < 1

// Parity refinement of the base value: B = 2*k_b + s_b, k_b = 2*k_c + s_c.
struct BaseBits {
  int s_b;
  int k_b;
  int s_c;
};
BaseBits base_bits(int base);

// Parity refinement of the octave index down to the third bit.
struct OctaveBits {
  int s_a;  // A mod 2 (1 = odd octave)
  int s_q;  // floor(A/2) mod 2
  int s_r;  // floor(A/4) mod 2
};
OctaveBits octave_bits(const Nat& octave);

// Finite parity descriptor (B, s_b, s_c, s_a, s_q, s_r).
struct ExtendedState {
  int base;
  int s_b;  // B mod 2
  int s_c;  // floor(B/2) mod 2
  int s_a;  // A mod 2 (1 = odd octave)
  int s_q;  // floor(A/2) mod 2
  int s_r;  // floor(A/4) mod 2

  friend bool operator==(const ExtendedState&, const ExtendedState&) = default;
};

ExtendedState extract_state(const Nat& h);
ExtendedState state_from_bits(int base, int s_a, int s_q, int s_r);

enum class V2Class { Zero, One, Two, ThreePlus };

V2Class v2_class_of_bits(int s_a, int s_q, int s_r);
V2Class v2_class(const Nat& a);
const char* to_string(V2Class c);  // "0", "1", "2", "3+"

// Mod-8 contribution of the octave term: 0 for odd octaves, 4 for even.
int mod8_shift(int s_a);

// Even-octave indicator and base-parity sign factor.
struct ParityFactors {
  int indicator;  // 1 - s_a
  int sign;       // 1 - 2*s_b
};
ParityFactors parity_factors(int s_a, int s_b);

// The update computed through the split base/octave form; must agree with
// step() on every input (dual-route check).
Nat step_via_octave_split(const Nat& h);

}  // namespace collatz
