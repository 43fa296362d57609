#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "collatz/octave.hpp"

namespace collatz {

enum class Drift { Decay, Mixed, Grow };
const char* to_string(Drift d);

// Source tuple of a codebook row; s_b and s_c are determined by the base.
struct StateKey {
  int base;
  int s_a;
  int s_q;
  int s_r;

  friend bool operator==(const StateKey&, const StateKey&) = default;
  friend auto operator<=>(const StateKey&, const StateKey&) = default;
};

StateKey key_of(const ExtendedState& s);
std::string state_id(const StateKey& k, int outcome_id);

struct RowFlags {
  bool persist;  // B=7 and s_a=0
  bool entry67;  // B=6 and s_a=0
  bool exit73;   // B=7 and s_a=1
};

struct AttributeClassification {
  V2Class v2_class;
  std::string max_persist;  // "0","1","2","3+"
  Drift drift;
  RowFlags flags;
};

AttributeClassification classify_row_attributes(const ExtendedState& source);

struct CodebookRow {
  std::string id;
  ExtendedState source;
  int outcome_id = 0;
  V2Class v2_class = V2Class::Zero;
  std::string max_persist;
  Drift drift = Drift::Mixed;
  ExtendedState next;
  RowFlags flags{};
  int v2_consumed = 0;
  int v2_possible_gain = 0;

  // Derived-generation provenance (zero for fixture rows).
  std::size_t witness_count = 0;
  int witness_dv2_min = 0;  // observed v2(A') - min(v2(A), 3) style raw deltas
  int witness_dv2_max = 0;
};

enum class Provenance { PaperFixture, Derived };

struct Codebook {
  Provenance provenance = Provenance::Derived;
  std::uint64_t sample_bound = 0;  // derived books only
  std::vector<CodebookRow> rows;   // sorted by (source key, outcome_id)
  std::vector<std::string> warnings;

  const CodebookRow* find(const StateKey& k, int outcome_id) const;
  std::vector<const CodebookRow*> rows_for(const StateKey& k) const;
};

// Enumerates, for each of the 64 source tuples, every A <= sample_bound whose
// low three bits match, steps the witness exactly, and collects the distinct
// successor tuples as outcome rows. More than two distinct successors would be
// recorded with a multiplicity warning; an unpopulated tuple gets an explicit
// "unsampled" marker in warnings (possible only for sample_bound < 32, below
// the operation's stated precondition).
Codebook generate_derived_codebook(std::uint64_t sample_bound = 4096);

Codebook load_fixture_codebook(const std::filesystem::path& csv_path);

std::string codebook_to_csv(const Codebook& book);

// Cell-level diff classification.
enum class DiffKind { Structural, SuccessorBit, Budget };
const char* to_string(DiffKind k);

struct CellDiff {
  StateKey key;
  int derived_outcome;
  int fixture_outcome;
  std::string column;
  DiffKind kind;
  std::string derived_value;
  std::string fixture_value;
};

struct WitnessNote {
  StateKey key;
  int outcome_id;
  std::size_t witnesses;
  int dv2_min;
  int dv2_max;
};

struct CodebookDiff {
  std::vector<CellDiff> cells;
  std::vector<WitnessNote> witness_notes;  // exact per-witness v2 change ranges
  std::size_t structural_count = 0;
  std::size_t successor_bit_count = 0;
  std::size_t budget_count = 0;

  bool empty() const { return cells.empty(); }
};

// Outcome rows are matched by realized next.s_a where that disambiguates,
// otherwise by outcome_id.
CodebookDiff diff_codebooks(const Codebook& derived, const Codebook& paper);

std::string codebook_diff_to_csv(const CodebookDiff& d);
std::string codebook_diff_summary(const CodebookDiff& d);

}  // namespace collatz
