#include "collatz/paths.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "collatz/csv.hpp"
#include "collatz/rules.hpp"

namespace collatz {

namespace {

int edge_parity(int from, int to) {
  for (int p : {0, 1})
    if (next_base(from, p) == to) return p;
  throw std::invalid_argument("inadmissible base transition " + std::to_string(from) + "->" +
                              std::to_string(to));
}

}  // namespace

std::vector<int> forced_edge_parities(std::span<const int> seq) {
  if (seq.size() < 2) throw std::invalid_argument("base sequence too short");
  std::vector<int> out;
  out.reserve(seq.size());
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) out.push_back(edge_parity(seq[i], seq[i + 1]));
  out.push_back(edge_parity(seq.back(), 7));  // the implied entry edge 6->7
  return out;
}

BudgetBreakdown compute_budget(std::span<const int> seq) {
  if (seq.size() < 3 || seq[0] != 7 || seq[1] != 3 || seq.back() != 6)
    throw std::invalid_argument("return path must project to 7,3,...,6");
  for (std::size_t i = 1; i + 1 < seq.size(); ++i)
    if (seq[i] == 7) throw std::invalid_argument("return path may not pass through base 7");

  std::vector<int> parity = forced_edge_parities(seq);
  if (parity.front() != 1) throw std::invalid_argument("exit edge must leave an odd octave");
  if (parity.back() != 0) throw std::invalid_argument("entry edge must leave an even octave");

  BudgetBreakdown b;
  b.length = seq.size() - 1;  // edges incl exit, excl entry
  // Edge i goes from seq[i]; the last parity entry is the entry edge from 6.
  for (std::size_t i = 0; i < parity.size(); ++i) {
    int from = (i + 1 < seq.size()) ? seq[i] : 6;
    bool even_base = (from % 2 == 0);
    bool counted = (i > 0);  // exclude the exit edge, include the entry edge
    if (counted) {
      if (even_base)
        b.even_steps++;
      else
        b.odd_steps++;
      if (parity[i] == 1) {
        if (even_base)
          b.potential_gain_even++;
        else
          b.v2_max_gain++;
      }
    }
    if (i + 1 < seq.size()) {  // include-exit variant, excl entry
      if (even_base)
        b.even_steps_incl_exit++;
      else
        b.odd_steps_incl_exit++;
    }
  }
  b.v2_consumed = static_cast<int>(b.even_steps);
  b.entry_cost = 1;
  b.net_budget = b.v2_max_gain - b.v2_consumed - b.entry_cost;
  return b;
}

std::string ReturnPath::sequence_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < base_sequence.size(); ++i) {
    if (i) os << "->";
    os << base_sequence[i];
  }
  return os.str();
}

int net_from_fields(const ReturnPath& p) { return p.v2_max_gain - p.v2_consumed - p.entry_cost; }

ReturnSubgraph build_return_subgraph(const Codebook& book) {
  ReturnSubgraph g;
  g.provenance = book.provenance;
  g.book = &book;
  for (const auto& row : book.rows) g.adjacency[key_of(row.source)].push_back(&row);
  for (const auto& [key, rows] : g.adjacency) {
    if (key.base == 7 && key.s_a == 1) g.exit_set.push_back(key);
    if (key.base == 6 && key.s_a == 0) g.entry_set.push_back(key);
  }
  return g;
}

namespace {

// Vertex ids pack (base, bits) so that id order is (base, s_a, s_q, s_r) order.
int key_id(const StateKey& k) { return (k.base - 1) * 8 + (k.s_a | (k.s_q << 1) | (k.s_r << 2)); }
StateKey id_key(int id) {
  int bits = id & 7;
  return StateKey{id / 8 + 1, bits & 1, (bits >> 1) & 1, (bits >> 2) & 1};
}
int id_base(int id) { return id / 8 + 1; }

struct PathArena {
  std::vector<std::uint8_t> data;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> index;  // (offset, len)

  void add(const std::vector<std::uint8_t>& stack) {
    index.emplace_back(static_cast<std::uint32_t>(data.size()),
                       static_cast<std::uint32_t>(stack.size()));
    data.insert(data.end(), stack.begin(), stack.end());
  }
  std::span<const std::uint8_t> at(std::size_t i) const {
    auto [off, len] = index[i];
    return {data.data() + off, len};
  }
};

bool base_seq_less(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int ba = id_base(a[i]), bb = id_base(b[i]);
    if (ba != bb) return ba < bb;
  }
  if (a.size() != b.size()) return a.size() < b.size();  // then by length
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::size_t enumerate_return_paths(const ReturnSubgraph& g,
                                   const std::function<void(const ReturnPath&)>& visit,
                                   std::size_t* cycle_prunes) {
  std::size_t prunes = 0;
  // adjacency as dense arrays over vertex ids for DFS speed
  std::array<std::array<int, 2>, 64> succ{};
  std::array<int, 64> succ_count{};
  succ_count.fill(0);
  for (const auto& [key, rows] : g.adjacency) {
    int u = key_id(key);
    for (const auto* row : rows) {
      if (succ_count[u] >= 2) throw std::runtime_error("more than two outcomes per source tuple");
      succ[u][succ_count[u]++] = key_id(key_of(row->next));
    }
    if (succ_count[u] == 2 && succ[u][0] > succ[u][1]) std::swap(succ[u][0], succ[u][1]);
  }

  PathArena arena;
  std::vector<std::uint8_t> stack;
  std::uint64_t on_path = 0;  // bitset over 64 vertex ids

  auto dfs = [&](auto&& self, int v) -> void {
    stack.push_back(static_cast<std::uint8_t>(v));
    on_path |= (1ull << v);
    StateKey k = id_key(v);
    if (k.base == 6 && k.s_a == 0) {
      arena.add(stack);  // entry reached; the 6->7 edge is implied
    } else {
      for (int i = 0; i < succ_count[v]; ++i) {
        int w = succ[v][i];
        if (id_base(w) == 7) continue;  // re-entry/persistence terminates the walk
        if (on_path & (1ull << w)) {    // simple paths only; repeats witness a cycle
          ++prunes;
          continue;
        }
        self(self, w);
      }
    }
    on_path &= ~(1ull << v);
    stack.pop_back();
  };

  std::vector<StateKey> exits = g.exit_set;
  std::sort(exits.begin(), exits.end());
  for (const StateKey& e : exits) dfs(dfs, key_id(e));
  if (cycle_prunes) *cycle_prunes = prunes;

  std::vector<std::uint32_t> order(arena.index.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return base_seq_less(arena.at(a), arena.at(b));
  });

  ReturnPath p;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    auto ids = arena.at(order[rank]);
    p.id = static_cast<int>(rank + 1);
    p.base_sequence.clear();
    p.vertex_sequence.clear();
    for (std::uint8_t id : ids) {
      p.base_sequence.push_back(id_base(id));
      p.vertex_sequence.push_back(id_key(id));
    }
    // Budget computed straight off the vertex bits (each edge's octave parity
    // is its source vertex's s_a; the entry edge leaves the final even-octave
    // B6 vertex). Matches compute_budget on the base projection.
    std::size_t even = 0, odd = 0;
    int gain = 0;
    for (std::size_t i = 1; i + 1 < ids.size(); ++i) {  // exclude exit and entry sources
      int from_base = id_base(ids[i]);
      if (from_base % 2 == 0) {
        even++;
      } else {
        odd++;
        if ((ids[i] & 1) == 1) gain++;
      }
    }
    even++;  // the implied entry edge from the terminal even-octave B6 vertex
    p.length = ids.size() - 1;
    p.even_steps = even;
    p.odd_steps = odd;
    p.v2_consumed = static_cast<int>(even);
    p.v2_max_gain = gain;
    p.entry_cost = 1;
    p.net_budget = gain - static_cast<int>(even) - 1;
    p.verdict = p.net_budget <= 0 ? "contracts" : "regenerates";
    visit(p);
  }
  return order.size();
}

std::vector<ReturnPath> enumerate_return_paths(const ReturnSubgraph& g) {
  std::vector<ReturnPath> out;
  enumerate_return_paths(g, [&](const ReturnPath& p) { out.push_back(p); });
  return out;
}

namespace {

std::vector<int> parse_sequence(const std::string& s, const std::string& where) {
  std::vector<int> seq;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::runtime_error(where + ": bad sequence '" + s + "'");
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    seq.push_back(std::stoi(s.substr(i, j - i)));
    i = j;
    if (i < s.size()) {
      if (s.compare(i, 2, "->") != 0)
        throw std::runtime_error(where + ": bad sequence separator in '" + s + "'");
      i += 2;
    }
  }
  return seq;
}

const char* kPathsHeader =
    "Path,Sequence,Type,Length,Even_Steps,Odd_Steps,v2_Consumed,v2_Max_Gain,Entry_Cost,"
    "Net_Budget,Verdict";

}  // namespace

PaperPathCatalog load_fixture_paths(const std::filesystem::path& csv_path) {
  CsvTable t = read_csv_file(csv_path);
  std::vector<std::string> expected;
  {
    std::istringstream hs(kPathsHeader);
    std::string col;
    while (std::getline(hs, col, ',')) expected.push_back(col);
  }
  // Emitted enumerations carry a trailing `mode` column; accept it so the
  // tool's own output round-trips through this loader.
  std::vector<std::string> with_mode = expected;
  with_mode.push_back("mode");
  if (t.header != expected && t.header != with_mode)
    throw std::runtime_error(csv_path.string() + ": header does not match the table_a2 schema");

  PaperPathCatalog cat;
  std::size_t rowno = 1;
  for (const auto& r : t.rows) {
    ++rowno;
    std::string where = csv_path.filename().string() + ":" + std::to_string(rowno);
    ReturnPath p;
    p.id = std::stoi(r[0]);
    p.base_sequence = parse_sequence(r[1], where);
    p.type_label = r[2];
    p.length = std::stoul(r[3]);
    p.even_steps = std::stoul(r[4]);
    p.odd_steps = std::stoul(r[5]);
    p.v2_consumed = std::stoi(r[6]);
    p.v2_max_gain = std::stoi(r[7]);
    p.entry_cost = std::stoi(r[8]);
    p.net_budget = std::stoi(r[9]);
    p.verdict = r[10];

    auto issue = [&](const std::string& what) { cat.issues.push_back({p.id, what}); };
    try {
      BudgetBreakdown b = compute_budget(p.base_sequence);
      if (b.length != p.length) issue("Length does not match the printed sequence");
    } catch (const std::exception& e) {
      issue(std::string("inadmissible sequence: ") + e.what());
    }
    if (p.even_steps + p.odd_steps != p.length) issue("Even_Steps + Odd_Steps != Length");
    if (p.entry_cost != 1) issue("Entry_Cost != 1");
    if (p.net_budget != p.v2_max_gain - p.v2_consumed - p.entry_cost)
      issue("Net_Budget != v2_Max_Gain - v2_Consumed - Entry_Cost");
    if (p.net_budget > 0) issue("Net_Budget > 0");
    cat.paths.push_back(std::move(p));
  }
  return cat;
}

std::string paths_to_csv(std::span<const ReturnPath> paths, const std::string& mode) {
  std::ostringstream os;
  os << kPathsHeader << ",mode\n";
  for (const auto& p : paths) {
    os << p.id << ',' << p.sequence_string() << ',' << p.type_label << ',' << p.length << ','
       << p.even_steps << ',' << p.odd_steps << ',' << p.v2_consumed << ',' << p.v2_max_gain
       << ',' << p.entry_cost << ',' << p.net_budget << ',' << p.verdict << ',' << mode << '\n';
  }
  return os.str();
}

namespace {

void fixture_column_checks(const PaperPathCatalog& fixture, PathDiff& d) {
  for (const auto& p : fixture.paths) {
    BudgetBreakdown b;
    try {
      b = compute_budget(p.base_sequence);
    } catch (const std::exception&) {
      continue;  // already recorded as a fixture issue
    }
    auto col = [&](const char* name, long long fixture_v, long long recomputed) {
      if (fixture_v != recomputed)
        d.column_discrepancies.push_back(
            {p.id, name, std::to_string(fixture_v), std::to_string(recomputed)});
    };
    col("Even_Steps", static_cast<long long>(p.even_steps), static_cast<long long>(b.even_steps));
    col("Odd_Steps", static_cast<long long>(p.odd_steps), static_cast<long long>(b.odd_steps));
    col("v2_Consumed", p.v2_consumed, b.v2_consumed);
    col("v2_Max_Gain", p.v2_max_gain, b.v2_max_gain);
    col("Net_Budget", p.net_budget, b.net_budget);
  }
  d.fixture_issues = fixture.issues;
  d.fixture_rows = fixture.paths.size();
  std::set<std::string> seqs;
  for (const auto& p : fixture.paths) seqs.insert(p.sequence_string());
  d.distinct_fixture_sequences = seqs.size();
}

}  // namespace

PathDiff diff_against_tableA2(const ReturnSubgraph& g, const PaperPathCatalog& fixture) {
  PathDiff d;
  fixture_column_checks(fixture, d);

  std::set<std::vector<int>> fixture_seqs;
  for (const auto& p : fixture.paths) fixture_seqs.insert(p.base_sequence);

  std::set<std::vector<int>> matched;
  enumerate_return_paths(g, [&](const ReturnPath& p) {
    d.enumerated_paths++;
    if (p.net_budget > 0) d.positive_budget_paths++;
    auto it = fixture_seqs.find(p.base_sequence);
    if (it != fixture_seqs.end())
      matched.insert(*it);
    else
      d.extra_enumerated++;
  });
  d.matched_fixture_sequences = matched.size();
  for (const auto& seq : fixture_seqs)
    if (!matched.count(seq)) {
      ReturnPath tmp;
      tmp.base_sequence = seq;
      d.unmatched_sequences.push_back(tmp.sequence_string());
    }
  return d;
}

PathDiff diff_catalog_against_itself(const PaperPathCatalog& fixture) {
  PathDiff d;
  fixture_column_checks(fixture, d);
  d.enumerated_paths = fixture.paths.size();
  d.matched_fixture_sequences = d.distinct_fixture_sequences;
  for (const auto& p : fixture.paths)
    if (p.net_budget > 0) d.positive_budget_paths++;
  return d;
}

std::string path_diff_report(const PathDiff& d) {
  std::ostringstream os;
  os << "fixture rows: " << d.fixture_rows << " (" << d.distinct_fixture_sequences
     << " distinct base sequences)\n";
  os << "enumerated paths: " << d.enumerated_paths << "\n";
  os << "fixture sequences matched: " << d.matched_fixture_sequences << "/"
     << d.distinct_fixture_sequences << "\n";
  for (const auto& s : d.unmatched_sequences) os << "  unmatched fixture sequence: " << s << "\n";
  os << "extra enumerated paths (not in fixture): " << d.extra_enumerated << "\n";
  os << "enumerated paths with positive net budget: " << d.positive_budget_paths << "\n";
  for (const auto& i : d.fixture_issues)
    os << "  fixture issue: path " << i.path_id << ": " << i.what << "\n";
  os << "column discrepancies (fixture vs recomputation under the odd-octave gain rule): "
     << d.column_discrepancies.size() << "\n";
  for (const auto& c : d.column_discrepancies)
    os << "  path " << c.fixture_path_id << " " << c.column << ": fixture " << c.fixture_value
       << " vs recomputed " << c.recomputed_value << "\n";
  return os.str();
}

// ---- cycle enumeration -----------------------------------------------------

namespace {

struct CycleGraph {
  std::vector<int> verts;                 // vertex ids, sorted
  std::map<int, std::vector<int>> succ;   // id -> sorted successor ids
  bool tuple_level = false;               // ids encode full extended-state tuples
};

int edge_weight(int from_base, int from_parity) {
  if (from_parity != 1) return 0;
  return (from_base % 2 == 1) ? 1 : -1;
}

void enumerate_cycles(const CycleGraph& g, CycleReport& report) {
  std::vector<int> stack;
  std::set<int> seen;
  auto record = [&](const std::vector<int>& cyc) {
    CycleRecord rec;
    int w = 0;
    for (int v : cyc) {
      StateKey k = id_key(v);
      rec.bases.push_back(k.base);
      rec.parities.push_back(k.s_a);
      if (g.tuple_level) {
        rec.sq_bits.push_back(k.s_q);
        rec.sr_bits.push_back(k.s_r);
      }
      w += edge_weight(k.base, k.s_a);
    }
    rec.weight = w;
    report.cycles.push_back(std::move(rec));
    report.cycle_count++;
    report.max_weight = std::max(report.max_weight, w);
    if (w > 0) report.positive_count++;
  };
  // Elementary cycles anchored at their minimal vertex.
  auto dfs = [&](auto&& self, int start, int v) -> void {
    auto it = g.succ.find(v);
    if (it == g.succ.end()) return;
    for (int w : it->second) {
      if (w == start) {
        record(stack);
      } else if (w > start && !seen.count(w)) {
        stack.push_back(w);
        seen.insert(w);
        self(self, start, w);
        seen.erase(w);
        stack.pop_back();
      }
    }
  };
  report.max_weight = std::numeric_limits<int>::min();
  for (int s : g.verts) {
    stack.assign(1, s);
    seen = {s};
    dfs(dfs, s, s);
  }
  if (report.cycle_count == 0) report.max_weight = 0;
}

}  // namespace

CycleReport cycle_weight_audit(const ReturnSubgraph& g) {
  CycleGraph cg;
  for (const auto& [key, rows] : g.adjacency) {
    if (key.base == 7) continue;
    int u = key_id(key);
    cg.verts.push_back(u);
    auto& out = cg.succ[u];
    for (const auto* row : rows) {
      StateKey to = key_of(row->next);
      if (to.base == 7) continue;
      out.push_back(key_id(to));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  std::sort(cg.verts.begin(), cg.verts.end());
  cg.tuple_level = true;
  CycleReport report;
  enumerate_cycles(cg, report);
  return report;
}

CycleReport cycle_weight_audit_base() {
  CycleGraph cg;
  for (int b = 1; b <= 8; ++b) {
    if (b == 7) continue;
    cg.verts.push_back(b);
  }
  // At base level the octave parity lives on the edge, and each ordered pair
  // (from, to) admits exactly one parity, so a vertex cycle determines its
  // edge parities and hence its weight.
  std::map<int, std::vector<int>> succ;
  for (int b : cg.verts)
    for (int p : {0, 1}) {
      int t = next_base(b, p);
      if (t != 7) succ[b].push_back(t);
    }
  for (auto& [v, s] : succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  cg.succ = std::move(succ);

  CycleReport report;
  std::vector<int> stack;
  std::set<int> seen;
  auto record = [&](const std::vector<int>& cyc) {
    CycleRecord rec;
    int w = 0;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int from = cyc[i];
      int to = cyc[(i + 1) % cyc.size()];
      int p = edge_parity(from, to);
      rec.bases.push_back(from);
      rec.parities.push_back(p);
      w += edge_weight(from, p);
    }
    rec.weight = w;
    report.cycles.push_back(std::move(rec));
    report.cycle_count++;
    report.max_weight = std::max(report.max_weight, w);
    if (w > 0) report.positive_count++;
  };
  auto dfs = [&](auto&& self, int start, int v) -> void {
    auto it = cg.succ.find(v);
    if (it == cg.succ.end()) return;
    for (int w : it->second) {
      if (w == start) {
        record(stack);
      } else if (w > start && !seen.count(w)) {
        stack.push_back(w);
        seen.insert(w);
        self(self, start, w);
        seen.erase(w);
        stack.pop_back();
      }
    }
  };
  report.max_weight = std::numeric_limits<int>::min();
  for (int s : cg.verts) {
    stack.assign(1, s);
    seen = {s};
    dfs(dfs, s, s);
  }
  if (report.cycle_count == 0) report.max_weight = 0;
  return report;
}

std::string cycle_report_csv(const CycleReport& r) {
  std::ostringstream os;
  os << "cycle,weight\n";
  for (const auto& c : r.cycles) {
    bool tuples = !c.sq_bits.empty();
    for (std::size_t i = 0; i < c.bases.size(); ++i) {
      if (i) os << "->";
      os << c.bases[i] << (c.parities[i] ? "o" : "e");
      if (tuples) os << c.sq_bits[i] << c.sr_bits[i];
    }
    os << ',' << c.weight << '\n';
  }
  return os.str();
}

}  // namespace collatz
