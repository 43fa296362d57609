#include "collatz/reproduce.hpp"

#include <sstream>

#include "collatz/csv.hpp"
#include "collatz/kernel.hpp"
#include "collatz/octave.hpp"

namespace collatz {

std::string render_table1(std::uint64_t max_start) {
  std::vector<std::vector<Nat>> columns;
  std::size_t depth = 0;
  for (std::uint64_t n = 1; n <= max_start; ++n) {
    Trajectory t = run_trajectory(Nat(n));
    depth = std::max(depth, t.values.size());
    columns.push_back(std::move(t.values));
  }
  std::ostringstream os;
  os << "step";
  for (std::uint64_t n = 1; n <= max_start; ++n) os << ',' << n;
  os << '\n';
  for (std::size_t step = 0; step < depth; ++step) {
    os << (step + 1);
    for (const auto& col : columns) {
      os << ',';
      if (step < col.size())
        os << col[step];
      else
        os << '-';
    }
    os << '\n';
  }
  return os.str();
}

std::vector<Table2Row> compute_table2() {
  std::vector<Table2Row> rows;
  for (int h = 1; h <= 16; ++h) {
    Table2Row r;
    r.h = h;
    BaseOctave bo = to_base_octave(h);
    r.base = bo.base;
    r.k_b = bo.base / 2;
    r.s_b = bo.base % 2;
    Nat h2 = step(Nat(h));
    BaseOctave nb = to_base_octave(h2);
    r.parity_change = std::string(r.s_b ? "o" : "e") + "->" + ((h2 & 1) != 0 ? "o" : "e");
    r.h_next = h2;
    r.base_next = nb.base;
    r.k_b_next = nb.base / 2;
    r.s_b_next = nb.base % 2;
    r.octave_next = nb.octave;
    r.s_a_next = static_cast<int>(nb.octave & 1);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string render_table2() {
  std::ostringstream os;
  os << "h,B,k_b,s_b,parity_change,h_next,B_next,k_b_next,s_b_next,A_next,s_a_next\n";
  for (const auto& r : compute_table2()) {
    os << r.h << ',' << r.base << ',' << r.k_b << ',' << r.s_b << ',' << r.parity_change << ','
       << r.h_next << ',' << r.base_next << ',' << r.k_b_next << ',' << r.s_b_next << ','
       << r.octave_next << ',' << r.s_a_next << '\n';
  }
  return os.str();
}

std::vector<Table2CellDiff> diff_table2(const std::filesystem::path& fixture_csv) {
  CsvTable fix = read_csv_file(fixture_csv);
  auto rows = compute_table2();
  std::vector<Table2CellDiff> out;
  auto col = [&](const char* name) {
    int c = fix.column(name);
    if (c < 0) throw std::runtime_error(fixture_csv.string() + ": missing column " + name);
    return static_cast<std::size_t>(c);
  };
  std::size_t c_h = col("h"), c_B = col("B"), c_kb = col("k_b"), c_sb = col("s_b"),
              c_pc = col("parity_change"), c_hn = col("h_next"), c_Bn = col("B_next"),
              c_kbn = col("k_b_next"), c_sbn = col("s_b_next"), c_An = col("A_next"),
              c_san = col("s_a_next");
  if (fix.rows.size() != rows.size())
    throw std::runtime_error(fixture_csv.string() + ": expected 16 rows");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const auto& f = fix.rows[i];
    if (f[c_h] != std::to_string(r.h))
      throw std::runtime_error(fixture_csv.string() + ": rows out of order");
    auto cell = [&](const char* name, const std::string& computed, const std::string& fixture,
                    bool octave) {
      if (computed != fixture) out.push_back({r.h, name, octave, computed, fixture});
    };
    auto str = [](const auto& v) {
      std::ostringstream s;
      s << v;
      return s.str();
    };
    cell("B", str(r.base), f[c_B], false);
    cell("k_b", str(r.k_b), f[c_kb], false);
    cell("s_b", str(r.s_b), f[c_sb], false);
    cell("parity_change", r.parity_change, f[c_pc], false);
    cell("h_next", str(r.h_next), f[c_hn], false);
    cell("B_next", str(r.base_next), f[c_Bn], false);
    cell("k_b_next", str(r.k_b_next), f[c_kbn], false);
    cell("s_b_next", str(r.s_b_next), f[c_sbn], false);
    cell("A_next", str(r.octave_next), f[c_An], true);
    cell("s_a_next", str(r.s_a_next), f[c_san], true);
  }
  return out;
}

std::string table2_diff_csv(const std::vector<Table2CellDiff>& diffs) {
  std::ostringstream os;
  os << "h,column,octave_column,computed,fixture\n";
  for (const auto& d : diffs)
    os << d.h << ',' << d.column << ',' << (d.octave_column ? 1 : 0) << ',' << d.computed << ','
       << d.fixture << '\n';
  return os.str();
}

std::string render_tableB1() {
  constexpr int kOctaves = 16;
  constexpr int kIterates = 9;  // h2..h10
  std::ostringstream os;
  os << "row";
  for (int a = 1; a <= kOctaves; ++a) os << ",col" << a;
  os << '\n';
  for (int b = 1; b <= 8; ++b) {
    os << "base_class_B" << b;
    for (int a = 1; a <= kOctaves; ++a) os << ',';
    os << '\n';
    std::vector<std::vector<Nat>> trajs;
    os << "h1";
    for (int a = 1; a <= kOctaves; ++a) {
      Nat h1 = b + 8 * (Nat(a) - 1);
      os << ',' << h1;
      trajs.push_back(run_trajectory(h1, 1 + kIterates + kDefaultStepCap).values);
    }
    os << '\n';
    os << "A1";
    for (int a = 1; a <= kOctaves; ++a) os << ',' << a;
    os << '\n';
    for (int it = 1; it <= kIterates; ++it) {
      os << 'h' << (it + 1);
      for (const auto& values : trajs) {
        os << ',';
        if (static_cast<std::size_t>(it) < values.size())
          os << values[it];
        else
          os << '-';
      }
      os << '\n';
    }
  }
  return os.str();
}

std::string render_figure2(const Nat& h1, std::size_t step_cap) {
  std::ostringstream os;
  os << "index,h,base,A,segment,kink\n";
  for (const auto& row : figure2_profile(h1, step_cap)) {
    os << row.index << ',' << row.h << ',' << row.base << ',' << row.octave << ','
       << (row.growth ? "growth" : "decay") << ',' << (row.kink ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace collatz
