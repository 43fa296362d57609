#include "collatz/codebook.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "collatz/csv.hpp"
#include "collatz/kernel.hpp"
#include "collatz/rules.hpp"

namespace collatz {

const char* to_string(Drift d) {
  switch (d) {
    case Drift::Decay: return "DECAY";
    case Drift::Mixed: return "MIXED";
    case Drift::Grow: return "GROW";
  }
  return "?";
}

StateKey key_of(const ExtendedState& s) { return StateKey{s.base, s.s_a, s.s_q, s.s_r}; }

std::string state_id(const StateKey& k, int outcome_id) {
  std::ostringstream os;
  os << "B" << k.base << "_sb" << (k.base & 1) << "_sc" << ((k.base >> 1) & 1) << "_sa" << k.s_a
     << "_sq" << k.s_q << "_sr" << k.s_r << "_ID" << outcome_id;
  return os.str();
}

AttributeClassification classify_row_attributes(const ExtendedState& s) {
  AttributeClassification c;
  c.v2_class = v2_class_of_bits(s.s_a, s.s_q, s.s_r);
  c.max_persist = to_string(c.v2_class);
  if (s.base == 7 && s.s_a == 0)
    c.drift = Drift::Grow;
  else if (s.base % 2 == 0)
    c.drift = Drift::Decay;
  else
    c.drift = Drift::Mixed;
  c.flags.persist = (s.base == 7 && s.s_a == 0);
  c.flags.entry67 = (s.base == 6 && s.s_a == 0);
  c.flags.exit73 = (s.base == 7 && s.s_a == 1);
  return c;
}

const CodebookRow* Codebook::find(const StateKey& k, int outcome_id) const {
  for (const auto& r : rows)
    if (key_of(r.source) == k && r.outcome_id == outcome_id) return &r;
  return nullptr;
}

std::vector<const CodebookRow*> Codebook::rows_for(const StateKey& k) const {
  std::vector<const CodebookRow*> out;
  for (const auto& r : rows)
    if (key_of(r.source) == k) out.push_back(&r);
  return out;
}

namespace {

int budget_consumed(const StateKey& k) { return k.s_a == 0 ? 1 : 0; }

int budget_possible_gain(const StateKey& k, int outcome_id) {
  return (k.s_a == 1 && (k.base % 2 == 1 || outcome_id == 1)) ? 1 : 0;
}

struct OutcomeAccum {
  std::size_t witnesses = 0;
  int dv2_min = 0;
  int dv2_max = 0;
  bool any = false;
};

}  // namespace

Codebook generate_derived_codebook(std::uint64_t sample_bound) {
  if (sample_bound < 1)
    throw std::invalid_argument("generate_derived_codebook: sample_bound must be >= 1");
  Codebook book;
  book.provenance = Provenance::Derived;
  book.sample_bound = sample_bound;

  for (int base = 1; base <= 8; ++base) {
    // lexicographic (s_a, s_q, s_r), the order the fixture uses
    for (int bits = 0; bits < 8; ++bits) {
      const int s_a = (bits >> 2) & 1, s_q = (bits >> 1) & 1, s_r = bits & 1;
      const StateKey key{base, s_a, s_q, s_r};
      const ExtendedState source = state_from_bits(base, s_a, s_q, s_r);

      std::map<ExtendedState, OutcomeAccum,
               decltype([](const ExtendedState& a, const ExtendedState& b) {
                 return std::tie(a.s_a, a.s_q, a.s_r, a.base) <
                        std::tie(b.s_a, b.s_q, b.s_r, b.base);
               })>
          outcomes;

      const std::uint64_t low = static_cast<std::uint64_t>(s_a | (s_q << 1) | (s_r << 2));
      for (std::uint64_t A = (low == 0 ? 8 : low); A <= sample_bound; A += 8) {
        Nat h = from_base_octave(BaseOctave{base, Nat(A)});
        Nat h2 = step(h);
        BaseOctave next_bo = to_base_octave(h2);
        ExtendedState next = extract_state(h2);
        int dv2 = static_cast<int>(v2(next_bo.octave)) - static_cast<int>(v2_u64(A));
        auto& acc = outcomes[next];
        acc.witnesses++;
        if (!acc.any) {
          acc.dv2_min = acc.dv2_max = dv2;
          acc.any = true;
        } else {
          acc.dv2_min = std::min(acc.dv2_min, dv2);
          acc.dv2_max = std::max(acc.dv2_max, dv2);
        }
      }

      if (outcomes.empty()) {
        book.warnings.push_back("unsampled: " + state_id(key, 0) +
                                " has no witness A <= " + std::to_string(sample_bound));
        continue;
      }
      if (outcomes.size() > 2) {
        book.warnings.push_back("multiplicity: " + state_id(key, 0) + " has " +
                                std::to_string(outcomes.size()) + " distinct successors");
      }

      AttributeClassification cls = classify_row_attributes(source);
      int outcome_id = 0;
      for (const auto& [next, acc] : outcomes) {
        CodebookRow row;
        row.id = state_id(key, outcome_id);
        row.source = source;
        row.outcome_id = outcome_id;
        row.v2_class = cls.v2_class;
        row.max_persist = cls.max_persist;
        row.drift = cls.drift;
        row.next = next;
        row.flags = cls.flags;
        row.v2_consumed = budget_consumed(key);
        row.v2_possible_gain = budget_possible_gain(key, outcome_id);
        row.witness_count = acc.witnesses;
        row.witness_dv2_min = acc.dv2_min;
        row.witness_dv2_max = acc.dv2_max;
        book.rows.push_back(std::move(row));
        ++outcome_id;
      }
    }
  }
  return book;
}

namespace {

int parse_bit(const std::string& s, const std::string& where) {
  if (s == "0") return 0;
  if (s == "1") return 1;
  throw std::runtime_error(where + ": expected bit, got '" + s + "'");
}

int parse_int(const std::string& s, const std::string& where) {
  try {
    return std::stoi(s);
  } catch (...) {
    throw std::runtime_error(where + ": expected integer, got '" + s + "'");
  }
}

V2Class parse_v2_class(const std::string& s, const std::string& where) {
  if (s == "0") return V2Class::Zero;
  if (s == "1") return V2Class::One;
  if (s == "2") return V2Class::Two;
  if (s == "3+") return V2Class::ThreePlus;
  throw std::runtime_error(where + ": bad v2_class '" + s + "'");
}

Drift parse_drift(const std::string& s, const std::string& where) {
  if (s.rfind("DECAY", 0) == 0) return Drift::Decay;
  if (s == "MIXED") return Drift::Mixed;
  if (s.rfind("GROW", 0) == 0 || s.rfind("PERSIST", 0) == 0) return Drift::Grow;
  throw std::runtime_error(where + ": bad drift_type '" + s + "'");
}

const char* kCodebookHeader =
    "StateID_128,B,s_b,s_c,s_a,s_q,s_r,OutcomeID,v2_class,max_persist,drift_type,NextB,next_sb,"
    "next_sc,next_sa,next_sq,next_sr,IsS7persist,IsEntry67,IsExit73,v2_consumed,v2_possible_gain";

}  // namespace

Codebook load_fixture_codebook(const std::filesystem::path& csv_path) {
  CsvTable t = read_csv_file(csv_path);
  std::vector<std::string> expected;
  {
    std::istringstream hs(kCodebookHeader);
    std::string col;
    while (std::getline(hs, col, ',')) expected.push_back(col);
  }
  if (t.header != expected)
    throw std::runtime_error(csv_path.string() + ": header does not match the codebook schema");

  Codebook book;
  book.provenance = Provenance::PaperFixture;
  std::size_t rowno = 1;
  for (const auto& r : t.rows) {
    ++rowno;
    std::string where = csv_path.filename().string() + ":" + std::to_string(rowno);
    CodebookRow row;
    row.id = r[0];
    int B = parse_int(r[1], where + " col B");
    if (B < 1 || B > 8) throw std::runtime_error(where + ": base out of range");
    int s_b = parse_bit(r[2], where + " col s_b");
    int s_c = parse_bit(r[3], where + " col s_c");
    row.source = state_from_bits(B, parse_bit(r[4], where), parse_bit(r[5], where),
                                 parse_bit(r[6], where));
    if (row.source.s_b != s_b || row.source.s_c != s_c)
      throw std::runtime_error(where + ": s_b/s_c inconsistent with B");
    row.outcome_id = parse_bit(r[7], where + " col OutcomeID");
    row.v2_class = parse_v2_class(r[8], where + " col v2_class");
    row.max_persist = r[9];
    row.drift = parse_drift(r[10], where + " col drift_type");
    int nB = parse_int(r[11], where + " col NextB");
    if (nB < 1 || nB > 8) throw std::runtime_error(where + ": NextB out of range");
    int n_sb = parse_bit(r[12], where), n_sc = parse_bit(r[13], where);
    row.next = state_from_bits(nB, parse_bit(r[14], where), parse_bit(r[15], where),
                               parse_bit(r[16], where));
    if (row.next.s_b != n_sb || row.next.s_c != n_sc)
      throw std::runtime_error(where + ": next_sb/next_sc inconsistent with NextB");
    row.flags.persist = parse_bit(r[17], where);
    row.flags.entry67 = parse_bit(r[18], where);
    row.flags.exit73 = parse_bit(r[19], where);
    row.v2_consumed = parse_bit(r[20], where);
    row.v2_possible_gain = parse_bit(r[21], where);
    book.rows.push_back(std::move(row));
  }
  if (book.rows.size() != 128)
    throw std::runtime_error(csv_path.string() + ": expected 128 rows, got " +
                             std::to_string(book.rows.size()));
  std::sort(book.rows.begin(), book.rows.end(), [](const CodebookRow& a, const CodebookRow& b) {
    return std::tie(a.source.base, a.source.s_a, a.source.s_q, a.source.s_r, a.outcome_id) <
           std::tie(b.source.base, b.source.s_a, b.source.s_q, b.source.s_r, b.outcome_id);
  });
  return book;
}

std::string codebook_to_csv(const Codebook& book) {
  std::ostringstream os;
  os << kCodebookHeader << '\n';
  for (const auto& r : book.rows) {
    const char* drift = r.drift == Drift::Decay ? "DECAY(-1)"
                        : r.drift == Drift::Grow ? "GROW(+0.585)"
                                                 : "MIXED";
    os << r.id << ',' << r.source.base << ',' << r.source.s_b << ',' << r.source.s_c << ','
       << r.source.s_a << ',' << r.source.s_q << ',' << r.source.s_r << ',' << r.outcome_id << ','
       << to_string(r.v2_class) << ',' << r.max_persist << ',' << drift << ',' << r.next.base
       << ',' << r.next.s_b << ',' << r.next.s_c << ',' << r.next.s_a << ',' << r.next.s_q << ','
       << r.next.s_r << ',' << (r.flags.persist ? 1 : 0) << ',' << (r.flags.entry67 ? 1 : 0) << ','
       << (r.flags.exit73 ? 1 : 0) << ',' << r.v2_consumed << ',' << r.v2_possible_gain << '\n';
  }
  return os.str();
}

const char* to_string(DiffKind k) {
  switch (k) {
    case DiffKind::Structural: return "structural";
    case DiffKind::SuccessorBit: return "successor-bit";
    case DiffKind::Budget: return "budget";
  }
  return "?";
}

namespace {

void add_cell(CodebookDiff& d, const StateKey& key, int od, int fd, const std::string& col,
              DiffKind kind, const std::string& dv, const std::string& fv) {
  if (dv == fv) return;
  d.cells.push_back({key, od, fd, col, kind, dv, fv});
  switch (kind) {
    case DiffKind::Structural: d.structural_count++; break;
    case DiffKind::SuccessorBit: d.successor_bit_count++; break;
    case DiffKind::Budget: d.budget_count++; break;
  }
}

std::string s(int v) { return std::to_string(v); }

void diff_row_pair(CodebookDiff& d, const CodebookRow& dr, const CodebookRow& fr) {
  const StateKey key = key_of(dr.source);
  const int od = dr.outcome_id, fd = fr.outcome_id;
  add_cell(d, key, od, fd, "B", DiffKind::Structural, s(dr.source.base), s(fr.source.base));
  add_cell(d, key, od, fd, "s_b", DiffKind::Structural, s(dr.source.s_b), s(fr.source.s_b));
  add_cell(d, key, od, fd, "s_c", DiffKind::Structural, s(dr.source.s_c), s(fr.source.s_c));
  add_cell(d, key, od, fd, "v2_class", DiffKind::Structural, to_string(dr.v2_class),
           to_string(fr.v2_class));
  add_cell(d, key, od, fd, "max_persist", DiffKind::Structural, dr.max_persist, fr.max_persist);
  add_cell(d, key, od, fd, "drift_type", DiffKind::Structural, to_string(dr.drift),
           to_string(fr.drift));
  add_cell(d, key, od, fd, "NextB", DiffKind::Structural, s(dr.next.base), s(fr.next.base));
  add_cell(d, key, od, fd, "next_sb", DiffKind::Structural, s(dr.next.s_b), s(fr.next.s_b));
  add_cell(d, key, od, fd, "next_sc", DiffKind::Structural, s(dr.next.s_c), s(fr.next.s_c));
  add_cell(d, key, od, fd, "IsS7persist", DiffKind::Structural, s(dr.flags.persist),
           s(fr.flags.persist));
  add_cell(d, key, od, fd, "IsEntry67", DiffKind::Structural, s(dr.flags.entry67),
           s(fr.flags.entry67));
  add_cell(d, key, od, fd, "IsExit73", DiffKind::Structural, s(dr.flags.exit73),
           s(fr.flags.exit73));
  add_cell(d, key, od, fd, "next_sa", DiffKind::SuccessorBit, s(dr.next.s_a), s(fr.next.s_a));
  add_cell(d, key, od, fd, "next_sq", DiffKind::SuccessorBit, s(dr.next.s_q), s(fr.next.s_q));
  add_cell(d, key, od, fd, "next_sr", DiffKind::SuccessorBit, s(dr.next.s_r), s(fr.next.s_r));
  add_cell(d, key, od, fd, "v2_consumed", DiffKind::Budget, s(dr.v2_consumed), s(fr.v2_consumed));
  add_cell(d, key, od, fd, "v2_possible_gain", DiffKind::Budget, s(dr.v2_possible_gain),
           s(fr.v2_possible_gain));
}

}  // namespace

CodebookDiff diff_codebooks(const Codebook& derived, const Codebook& paper) {
  CodebookDiff d;
  for (int base = 1; base <= 8; ++base) {
    for (int bits = 0; bits < 8; ++bits) {
      StateKey key{base, bits & 1, (bits >> 1) & 1, (bits >> 2) & 1};
      auto drows = derived.rows_for(key);
      auto frows = paper.rows_for(key);
      if (drows.empty() || frows.empty()) continue;

      // Match by realized next.s_a when that gives a clean bijection,
      // otherwise fall back to outcome_id order.
      std::vector<std::pair<const CodebookRow*, const CodebookRow*>> pairs;
      if (drows.size() == 2 && frows.size() == 2 && drows[0]->next.s_a != drows[1]->next.s_a &&
          frows[0]->next.s_a != frows[1]->next.s_a) {
        for (const auto* dr : drows)
          for (const auto* fr : frows)
            if (dr->next.s_a == fr->next.s_a) pairs.emplace_back(dr, fr);
      } else {
        for (std::size_t i = 0; i < std::min(drows.size(), frows.size()); ++i)
          pairs.emplace_back(drows[i], frows[i]);
      }
      for (auto [dr, fr] : pairs) diff_row_pair(d, *dr, *fr);

      for (const auto* dr : drows)
        d.witness_notes.push_back({key, dr->outcome_id, dr->witness_count, dr->witness_dv2_min,
                                   dr->witness_dv2_max});
    }
  }
  return d;
}

std::string codebook_diff_to_csv(const CodebookDiff& d) {
  std::ostringstream os;
  os << "B,s_a,s_q,s_r,derived_outcome,fixture_outcome,column,class,derived,fixture\n";
  for (const auto& c : d.cells) {
    os << c.key.base << ',' << c.key.s_a << ',' << c.key.s_q << ',' << c.key.s_r << ','
       << c.derived_outcome << ',' << c.fixture_outcome << ',' << c.column << ','
       << to_string(c.kind) << ',' << c.derived_value << ',' << c.fixture_value << '\n';
  }
  return os.str();
}

std::string codebook_diff_summary(const CodebookDiff& d) {
  std::ostringstream os;
  os << "codebook diff: " << d.cells.size() << " cell mismatches (structural "
     << d.structural_count << ", successor-bit " << d.successor_bit_count << ", budget "
     << d.budget_count << ")\n";
  os << "witness v2-change ranges (exact arithmetic, per derived outcome row):\n";
  for (const auto& w : d.witness_notes) {
    os << "  " << state_id(w.key, w.outcome_id) << ": witnesses=" << w.witnesses
       << " dv2=[" << w.dv2_min << "," << w.dv2_max << "]\n";
  }
  return os.str();
}

}  // namespace collatz
