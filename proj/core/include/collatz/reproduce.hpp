#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "collatz/analysis.hpp"
#include "collatz/nat.hpp"

namespace collatz {

// Table 1: rows = steps, columns = starting values 1..max_start; entries after
// the first 1 are printed as "-" (the terminal basin is not iterated).
std::string render_table1(std::uint64_t max_start = 19);

// Table 2: base-octave decomposition and one update for h = 1..16.
struct Table2Row {
  int h;
  int base;
  int k_b;
  int s_b;
  std::string parity_change;  // "o->e" etc.
  Nat h_next;
  int base_next;
  Nat k_b_next;
  int s_b_next;
  Nat octave_next;
  int s_a_next;
};

std::vector<Table2Row> compute_table2();
std::string render_table2();

struct Table2CellDiff {
  int h;
  std::string column;
  bool octave_column;  // A_next / s_a_next
  std::string computed;
  std::string fixture;
};

// Cell-level comparison against the transcribed fixture.
std::vector<Table2CellDiff> diff_table2(const std::filesystem::path& fixture_csv);
std::string table2_diff_csv(const std::vector<Table2CellDiff>& diffs);

// Table B1: eight base-class blocks, starting values across octaves 1..16,
// iterates h2..h10 with the same dash convention.
std::string render_tableB1();

// Figure 2 profile data for one start.
std::string render_figure2(const Nat& h1, std::size_t step_cap = kDefaultStepCap);

}  // namespace collatz
