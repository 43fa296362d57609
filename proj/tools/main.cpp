// collatz-octave: exact-arithmetic audit tool for the base-octave
// reformulation of the Collatz iteration. Subcommands recompute the bundled
// reference tables from exact integer computation, generate/diff the 128-row
// transition codebook, enumerate/diff return paths, run range audits, and
// export the base transition graph.
//
// Exit codes: 0 = all checks passed and no diff rows; 1 = findings present
// (arithmetic disagrees with a fixture, or an audited claim is violated);
// 2 = usage or I/O error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "collatz/analysis.hpp"
#include "collatz/codebook.hpp"
#include "collatz/csv.hpp"
#include "collatz/kernel.hpp"
#include "collatz/paths.hpp"
#include "collatz/reproduce.hpp"
#include "collatz/rules.hpp"

namespace fs = std::filesystem;
using namespace collatz;

namespace {

struct Options {
  std::string range;
  std::string mode = "paper";
  std::string format;
  std::string fixture_dir = "data";
  std::string out;
  std::size_t step_cap = kDefaultStepCap;
  unsigned jobs = 1;
  bool trajectories = false;
};

bool parse_range(const std::string& s, std::uint64_t& lo, std::uint64_t& hi) {
  auto pos = s.find("..");
  try {
    if (pos == std::string::npos) {
      lo = hi = std::stoull(s);
    } else {
      lo = std::stoull(s.substr(0, pos));
      hi = std::stoull(s.substr(pos + 2));
    }
  } catch (...) {
    return false;
  }
  return lo >= 1 && lo <= hi;
}

void emit(const Options& opt, const std::string& contents, const std::string& suffix = "") {
  if (opt.out.empty()) {
    std::cout << contents;
    return;
  }
  fs::path p(opt.out);
  if (!suffix.empty()) {
    p = p.parent_path() / (p.stem().string() + suffix + p.extension().string());
  }
  write_file_atomic(p, contents);
  std::cerr << "wrote " << p.string() << "\n";
}

std::string json_bool(bool b) { return b ? "true" : "false"; }

std::string record_jsonl(const StartRecord& r) {
  std::ostringstream os;
  os << "{\"h1\":" << r.h1 << ",\"steps\":" << r.steps << ",\"terminated\":"
     << json_bool(r.terminated) << ",\"peak\":" << r.peak << ",\"episodes\":" << r.episode_count
     << ",\"max_episode_len\":" << r.max_episode_length << ",\"itinerary_violations\":"
     << r.itinerary_violations << ",\"telescoping_ok\":" << json_bool(r.telescoping_ok)
     << ",\"convergence_ok\":" << json_bool(r.convergence_ok) << ",\"episode_bounds_ok\":"
     << json_bool(r.episode_bounds_ok) << ",\"odd_runs_ok\":" << json_bool(r.odd_runs_ok)
     << ",\"valuation_violations\":" << r.valuation_violations << "}\n";
  return os.str();
}

std::string trajectory_jsonl(std::uint64_t h1, std::size_t step_cap) {
  Trajectory t = run_trajectory(Nat(h1), step_cap);
  std::ostringstream os;
  os << "{\"h1\":" << h1 << ",\"steps\":[";
  for (std::size_t i = 0; i < t.values.size(); ++i) os << (i ? "," : "") << t.values[i];
  os << "],\"bases\":[";
  for (std::size_t i = 0; i < t.values.size(); ++i)
    os << (i ? "," : "") << to_base_octave(t.values[i]).base;
  os << "],\"octaves\":[";
  for (std::size_t i = 0; i < t.values.size(); ++i)
    os << (i ? "," : "") << to_base_octave(t.values[i]).octave;
  os << "],\"episodes\":[";
  auto eps = detect_episodes(t);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    os << (i ? "," : "") << "{\"start\":" << eps[i].start_index << ",\"entry\":"
       << eps[i].entry_value << ",\"entry_A\":" << eps[i].entry_octave << ",\"entry_v2\":"
       << eps[i].entry_v2 << ",\"t\":" << eps[i].length << "}";
  }
  os << "]}\n";
  return os.str();
}

bool format_ok(const Options& opt, const char* want) {
  if (opt.format.empty() || opt.format == want) return true;
  std::cerr << "error: this command emits " << want << " (got --format " << opt.format << ")\n";
  return false;
}

int cmd_reproduce(const std::string& table, const Options& opt) {
  if (!format_ok(opt, "csv")) return 2;
  if (table == "table1") {
    emit(opt, render_table1());
    return 0;
  }
  if (table == "table2") {
    emit(opt, render_table2());
    auto diffs = diff_table2(fs::path(opt.fixture_dir) / "table_2.csv");
    emit(opt, table2_diff_csv(diffs), ".diff");
    std::cerr << "table2: " << diffs.size() << " cell(s) disagree with the printed table\n";
    return diffs.empty() ? 0 : 1;
  }
  if (table == "tableB1") {
    emit(opt, render_tableB1());
    return 0;
  }
  if (table == "figure2") {
    std::uint64_t lo = 1639, hi = 1639;
    if (!opt.range.empty() && !parse_range(opt.range, lo, hi)) {
      std::cerr << "error: bad --range\n";
      return 2;
    }
    if (lo != hi) {
      std::cerr << "error: figure2 takes a single start (--range N..N)\n";
      return 2;
    }
    emit(opt, render_figure2(Nat(lo), opt.step_cap));
    return 0;
  }
  std::cerr << "error: unknown table '" << table << "'\n";
  return 2;
}

int cmd_codebook(const std::string& action, const Options& opt) {
  if (!format_ok(opt, "csv")) return 2;
  if (action == "generate") {
    Codebook book = generate_derived_codebook();
    emit(opt, codebook_to_csv(book));
    for (const auto& w : book.warnings) std::cerr << "warning: " << w << "\n";
    std::cerr << "derived codebook: " << book.rows.size() << " rows\n";
    return 0;
  }
  if (action == "diff") {
    Codebook derived = generate_derived_codebook();
    Codebook paper = load_fixture_codebook(fs::path(opt.fixture_dir) / "table_a1.csv");
    CodebookDiff d = diff_codebooks(derived, paper);
    emit(opt, codebook_diff_to_csv(d));
    std::cerr << codebook_diff_summary(d);
    return d.empty() ? 0 : 1;
  }
  std::cerr << "error: unknown codebook action '" << action << "'\n";
  return 2;
}

int cmd_paths(const std::string& action, const Options& opt) {
  if (!format_ok(opt, "csv")) return 2;
  const bool paper_mode = (opt.mode == "paper");
  if (opt.mode != "paper" && opt.mode != "derived") {
    std::cerr << "error: --mode must be paper or derived\n";
    return 2;
  }

  if (action == "enumerate") {
    if (paper_mode) {
      PaperPathCatalog cat = load_fixture_paths(fs::path(opt.fixture_dir) / "table_a2.csv");
      auto sorted = cat.paths;
      std::sort(sorted.begin(), sorted.end(), [](const ReturnPath& a, const ReturnPath& b) {
        return std::tie(a.base_sequence, a.length, a.id) <
               std::tie(b.base_sequence, b.length, b.id);
      });
      emit(opt, paths_to_csv(sorted, "paper"));
      for (const auto& i : cat.issues)
        std::cerr << "fixture issue: path " << i.path_id << ": " << i.what << "\n";
      std::cerr << "paper-mode return paths: " << cat.paths.size() << "\n";
      return cat.issues.empty() ? 0 : 1;
    }
    Codebook derived = generate_derived_codebook();
    ReturnSubgraph g = build_return_subgraph(derived);
    // The derived graph holds millions of simple paths; stream instead of
    // accumulating, writing through a temp file for atomicity.
    std::ofstream file;
    fs::path target, tmp;
    if (!opt.out.empty()) {
      target = opt.out;
      if (!target.parent_path().empty()) fs::create_directories(target.parent_path());
      tmp = target;
      tmp += ".tmp";
      file.open(tmp, std::ios::binary | std::ios::trunc);
      if (!file) {
        std::cerr << "error: cannot write " << tmp.string() << "\n";
        return 2;
      }
    }
    std::ostream& os = opt.out.empty() ? std::cout : file;
    os << "Path,Sequence,Type,Length,Even_Steps,Odd_Steps,v2_Consumed,v2_Max_Gain,Entry_Cost,"
          "Net_Budget,Verdict,mode\n";
    std::size_t positive = 0, prunes = 0;
    std::size_t count = enumerate_return_paths(
        g,
        [&](const ReturnPath& p) {
          if (p.net_budget > 0) positive++;
          os << p.id << ',' << p.sequence_string() << ",," << p.length << ',' << p.even_steps
             << ',' << p.odd_steps << ',' << p.v2_consumed << ',' << p.v2_max_gain << ','
             << p.entry_cost << ',' << p.net_budget << ',' << p.verdict << ",derived\n";
        },
        &prunes);
    if (!opt.out.empty()) {
      file.close();
      fs::rename(tmp, target);
      std::cerr << "wrote " << target.string() << "\n";
    }
    std::cerr << "derived-mode simple return paths: " << count
              << " (positive net budget: " << positive << "; vertex-repeat prunes recorded as "
              << "cycle evidence: " << prunes << ")\n";
    return positive == 0 ? 0 : 1;
  }

  if (action == "diff") {
    PaperPathCatalog cat = load_fixture_paths(fs::path(opt.fixture_dir) / "table_a2.csv");
    PathDiff d;
    if (paper_mode) {
      d = diff_catalog_against_itself(cat);
    } else {
      Codebook derived = generate_derived_codebook();
      ReturnSubgraph g = build_return_subgraph(derived);
      d = diff_against_tableA2(g, cat);
    }
    emit(opt, path_diff_report(d));
    return d.clean() ? 0 : 1;
  }

  if (action == "cycles") {
    CycleReport r;
    if (paper_mode) {
      r = cycle_weight_audit_base();
    } else {
      Codebook derived = generate_derived_codebook();
      ReturnSubgraph g = build_return_subgraph(derived);
      r = cycle_weight_audit(g);
    }
    emit(opt, cycle_report_csv(r));
    std::cerr << "elementary cycles: " << r.cycle_count << ", max weight " << r.max_weight
              << ", positive " << r.positive_count << "\n";
    return r.positive_count == 0 ? 0 : 1;
  }

  std::cerr << "error: unknown paths action '" << action << "'\n";
  return 2;
}

int cmd_audit(const Options& opt) {
  if (!format_ok(opt, "jsonl")) return 2;
  std::uint64_t lo = 0, hi = 0;
  if (opt.range.empty() || !parse_range(opt.range, lo, hi)) {
    std::cerr << "error: audit requires --range LO..HI with 1 <= LO <= HI\n";
    return 2;
  }
  std::ostringstream records;
  auto sink = [&](const StartRecord& r) {
    records << record_jsonl(r);
    if (opt.trajectories) records << trajectory_jsonl(r.h1, opt.step_cap);
  };
  RangeAuditReport rep =
      range_audit(lo, hi, opt.step_cap, opt.jobs,
                  opt.out.empty() && !opt.trajectories
                      ? std::function<void(const StartRecord&)>{}
                      : std::function<void(const StartRecord&)>(sink));
  if (!opt.out.empty() || opt.trajectories) emit(opt, records.str());
  std::cerr << audit_summary(rep);
  bool findings = !rep.clean() || !rep.cap_exhausted.empty();
  return findings ? 1 : 0;
}

int cmd_graph_export(const Options& opt) {
  if (!opt.format.empty() && opt.format != "dot") {
    std::cerr << "error: graph-export supports --format dot\n";
    return 2;
  }
  emit(opt, to_dot(build_base_graph()));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic audit of the base-octave Collatz reformulation"};
  app.require_subcommand(1);
  Options opt;

  std::string table, action;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--range", opt.range, "start range LO..HI");
    sub->add_option("--mode", opt.mode, "graph mode: paper|derived")
        ->check(CLI::IsMember({"paper", "derived"}));
    sub->add_option("--format", opt.format, "output format");
    sub->add_option("--fixture-dir", opt.fixture_dir, "directory with table fixtures");
    sub->add_option("--out", opt.out, "output file (stdout when omitted)");
    sub->add_option("--step-cap", opt.step_cap, "trajectory step cap");
    sub->add_option("--jobs", opt.jobs, "worker threads for audits");
    sub->add_flag("--trajectories", opt.trajectories, "emit full trajectory records");
  };

  CLI::App* rep = app.add_subcommand("reproduce", "recompute a table from exact arithmetic");
  rep->add_option("table", table, "table1|table2|tableB1|figure2")->required();
  add_common(rep);

  CLI::App* cb = app.add_subcommand("codebook", "generate or diff the 128-row codebook");
  cb->add_option("action", action, "generate|diff")->required();
  add_common(cb);

  CLI::App* pa = app.add_subcommand("paths", "return-path enumeration, diffing, cycle audit");
  pa->add_option("action", action, "enumerate|diff|cycles")->required();
  add_common(pa);

  CLI::App* au = app.add_subcommand("audit", "exhaustive range audit");
  add_common(au);

  CLI::App* ge = app.add_subcommand("graph-export", "emit the 16-edge base transition graph");
  add_common(ge);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (rep->parsed()) return cmd_reproduce(table, opt);
    if (cb->parsed()) return cmd_codebook(action, opt);
    if (pa->parsed()) return cmd_paths(action, opt);
    if (au->parsed()) return cmd_audit(opt);
    if (ge->parsed()) return cmd_graph_export(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
