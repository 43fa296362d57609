#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "collatz/codebook.hpp"

namespace collatz {

// Budget accounting for a return path given as its base projection
// 7,3,...,6 (the terminal 6->7 entry edge is implied).
//
// Conventions (pinned against the catalogue's own arithmetic):
//   - length counts edges including the forced exit 7->3 and excluding the
//     entry edge;
//   - even/odd/consumed counts exclude the exit edge and include the entry
//     edge;
//   - v2_max_gain counts odd-base odd-octave edges (the regeneration steps of
//     the budget definition); even-base odd-octave edges are tallied
//     separately as potential gain;
//   - net_budget = v2_max_gain - v2_consumed - entry_cost.
// The include-exit variants are carried alongside for reporting.
struct BudgetBreakdown {
  std::size_t length = 0;
  std::size_t even_steps = 0;
  std::size_t odd_steps = 0;
  int v2_consumed = 0;
  int v2_max_gain = 0;
  int entry_cost = 1;
  int net_budget = 0;
  std::size_t even_steps_incl_exit = 0;
  std::size_t odd_steps_incl_exit = 0;
  int potential_gain_even = 0;
};

// Throws std::invalid_argument if the sequence is not an admissible return
// path projection (must start 7,3 and end at 6, every hop a selection rule).
BudgetBreakdown compute_budget(std::span<const int> base_sequence);

// Octave parity forced on each edge of a base sequence by the selection rules.
std::vector<int> forced_edge_parities(std::span<const int> base_sequence);

struct ReturnPath {
  int id = 0;                       // fixture Path# or 1-based enumeration index
  std::vector<int> base_sequence;   // 7,3,...,6
  std::string type_label;           // fixture route description; empty when enumerated
  std::size_t length = 0;
  std::size_t even_steps = 0;
  std::size_t odd_steps = 0;
  int v2_consumed = 0;
  int v2_max_gain = 0;
  int entry_cost = 1;
  int net_budget = 0;
  std::string verdict;
  std::vector<StateKey> vertex_sequence;  // empty for catalogued fixture rows

  std::string sequence_string() const;  // "7->3->...->6"
};

// Net budget recomputed from the path's own gain/consumed fields.
int net_from_fields(const ReturnPath& p);

// ---- return subgraph over extended-state tuples -------------------------

struct ReturnSubgraph {
  Provenance provenance;
  // adjacency[key] = rows of the backing codebook, outcome order
  std::map<StateKey, std::vector<const CodebookRow*>> adjacency;
  std::vector<StateKey> exit_set;    // B=7, s_a=1
  std::vector<StateKey> entry_set;   // B=6, s_a=0
  const Codebook* book = nullptr;
};

ReturnSubgraph build_return_subgraph(const Codebook& book);

// Depth-first enumeration of all simple return paths: start at an exit-set
// vertex, follow codebook edges, never revisit a vertex, never enter base 7,
// stop on reaching an entry-set vertex (the 6->7 edge is then implied).
// Paths are visited in lexicographic base_sequence order (then by vertex
// sequence). Returns the number of paths visited; vertex-repeat prunes are
// tallied as cycle evidence when a counter is supplied (cycle_weight_audit
// enumerates the cycles themselves).
std::size_t enumerate_return_paths(const ReturnSubgraph& g,
                                   const std::function<void(const ReturnPath&)>& visit,
                                   std::size_t* cycle_prunes = nullptr);

// Convenience collector (beware: the derived graph holds millions of paths).
std::vector<ReturnPath> enumerate_return_paths(const ReturnSubgraph& g);

// ---- the published return-path catalogue (table_a2.csv fixture) ---------

struct FixturePathIssue {
  int path_id;
  std::string what;
};

struct PaperPathCatalog {
  std::vector<ReturnPath> paths;           // fixture order (Path 1..22)
  std::vector<FixturePathIssue> issues;    // identity/admissibility violations
};

PaperPathCatalog load_fixture_paths(const std::filesystem::path& csv_path);

std::string paths_to_csv(std::span<const ReturnPath> paths, const std::string& mode);

// ---- diff against Table A2 ----------------------------------------------

struct PathColumnDiscrepancy {
  int fixture_path_id;
  std::string column;
  std::string fixture_value;
  std::string recomputed_value;
};

struct PathDiff {
  std::size_t fixture_rows = 0;
  std::size_t distinct_fixture_sequences = 0;
  std::size_t matched_fixture_sequences = 0;      // found among enumerated paths
  std::vector<std::string> unmatched_sequences;   // fixture sequences never enumerated
  std::size_t enumerated_paths = 0;
  std::size_t extra_enumerated = 0;               // enumerated, not in the fixture
  std::vector<PathColumnDiscrepancy> column_discrepancies;
  std::size_t positive_budget_paths = 0;          // enumerated paths with net > 0
  std::vector<FixturePathIssue> fixture_issues;

  bool clean() const {
    return unmatched_sequences.empty() && column_discrepancies.empty() &&
           positive_budget_paths == 0 && fixture_issues.empty();
  }
};

PathDiff diff_against_tableA2(const ReturnSubgraph& g, const PaperPathCatalog& fixture);
PathDiff diff_catalog_against_itself(const PaperPathCatalog& fixture);

std::string path_diff_report(const PathDiff& d);

// ---- cycle audit ----------------------------------------------------------

// Weight of a cycle edge: +1 for an odd-base odd-octave step (regeneration
// capable), -1 for an even-base odd-octave step (regeneration wasted), 0 for
// even-octave steps. Under this weight the 1<->2 alternation and the 8->8
// self-loop weigh exactly 0; cycles whose only regeneration-capable edge is
// 5->8 weigh strictly negative.
struct CycleRecord {
  std::vector<int> bases;   // cycle vertices' bases, canonical rotation
  std::vector<int> parities;
  std::vector<int> sq_bits;  // tuple-level audits only (empty at base level)
  std::vector<int> sr_bits;
  int weight = 0;
};

struct CycleReport {
  std::size_t cycle_count = 0;
  int max_weight = 0;
  std::size_t positive_count = 0;
  std::vector<CycleRecord> cycles;  // canonical order
};

// Elementary cycles of the tuple-level return region (base 7 removed).
CycleReport cycle_weight_audit(const ReturnSubgraph& g);

// Elementary cycles of the base-level projection restricted to the return
// region (base 7 removed).
CycleReport cycle_weight_audit_base();

std::string cycle_report_csv(const CycleReport& r);

}  // namespace collatz
