#include "collatz/octave.hpp"

#include <stdexcept>

namespace collatz {

BaseOctave to_base_octave(const Nat& h) {
  if (h < 1) throw std::invalid_argument("to_base_octave: iterate must be >= 1");
  BaseOctave bo;
  bo.base = static_cast<int>((h - 1) % 8) + 1;
  bo.octave = 1 + (h - bo.base) / 8;
  return bo;
}

Nat from_base_octave(const BaseOctave& bo) {
  if (bo.base < 1 || bo.base > 8)
    throw std::invalid_argument("from_base_octave: base must be in 1..8");
  if (bo.octave < 1) throw std::invalid_argument("from_base_octave: octave must be >= 1");
  return bo.base + 8 * (bo.octave - 1);
}

BaseBits base_bits(int base) {
  if (base < 1 || base > 8) throw std::invalid_argument("base_bits: base must be in 1..8");
  return BaseBits{base & 1, base >> 1, (base >> 1) & 1};
}

OctaveBits octave_bits(const Nat& octave) {
  if (octave < 1) throw std::invalid_argument("octave_bits: octave must be >= 1");
  unsigned low = static_cast<unsigned>(octave & 7);
  return OctaveBits{static_cast<int>(low & 1), static_cast<int>((low >> 1) & 1),
                    static_cast<int>((low >> 2) & 1)};
}

ExtendedState extract_state(const Nat& h) {
  BaseOctave bo = to_base_octave(h);
  ExtendedState s;
  s.base = bo.base;
  s.s_b = bo.base & 1;
  s.s_c = (bo.base >> 1) & 1;
  unsigned low = static_cast<unsigned>(bo.octave & 7);
  s.s_a = low & 1;
  s.s_q = (low >> 1) & 1;
  s.s_r = (low >> 2) & 1;
  return s;
}

ExtendedState state_from_bits(int base, int s_a, int s_q, int s_r) {
  if (base < 1 || base > 8) throw std::invalid_argument("state_from_bits: base must be in 1..8");
  ExtendedState s;
  s.base = base;
  s.s_b = base & 1;
  s.s_c = (base >> 1) & 1;
  s.s_a = s_a & 1;
  s.s_q = s_q & 1;
  s.s_r = s_r & 1;
  return s;
}

V2Class v2_class_of_bits(int s_a, int s_q, int s_r) {
  if (s_a == 1) return V2Class::Zero;
  if (s_q == 1) return V2Class::One;
  if (s_r == 1) return V2Class::Two;
  return V2Class::ThreePlus;
}

V2Class v2_class(const Nat& a) {
  unsigned low = static_cast<unsigned>(a & 7);
  return v2_class_of_bits(low & 1, (low >> 1) & 1, (low >> 2) & 1);
}

const char* to_string(V2Class c) {
  switch (c) {
    case V2Class::Zero: return "0";
    case V2Class::One: return "1";
    case V2Class::Two: return "2";
    case V2Class::ThreePlus: return "3+";
  }
  return "?";
}

int mod8_shift(int s_a) {
  if (s_a != 0 && s_a != 1) throw std::invalid_argument("mod8_shift: bit expected");
  return 4 * (1 - s_a);
}

ParityFactors parity_factors(int s_a, int s_b) {
  if ((s_a | s_b) & ~1) throw std::invalid_argument("parity_factors: bits expected");
  return ParityFactors{1 - s_a, 1 - 2 * s_b};
}

Nat step_via_octave_split(const Nat& h) {
  BaseOctave bo = to_base_octave(h);
  int B = bo.base;
  int s_b = B & 1;
  int k_b = B >> 1;
  // ((2s+1)(2k_b+s) + s)/2 + (2s+1)*4*(A-1); the first term is the base-only
  // update, the second the octave term of the split form.
  Nat base_term = Nat((2 * s_b + 1) * (2 * k_b + s_b) + s_b) / 2;
  Nat octave_term = (2 * s_b + 1) * 4 * (bo.octave - 1);
  return base_term + octave_term;
}

}  // namespace collatz
