#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "collatz/csv.hpp"
#include "collatz/reproduce.hpp"

using namespace collatz;
namespace fs = std::filesystem;

static const fs::path kData = COLLATZ_DATA_DIR;

TEST_CASE("csv round trip is byte exact") {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 50; ++iter) {
    CsvTable t;
    std::size_t cols = 1 + rng() % 6;
    for (std::size_t c = 0; c < cols; ++c) t.header.push_back("col" + std::to_string(c));
    std::size_t rows = rng() % 20;
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<std::string> row;
      for (std::size_t c = 0; c < cols; ++c) row.push_back(std::to_string(rng() % 100000));
      t.rows.push_back(std::move(row));
    }
    std::string text = to_csv(t);
    std::istringstream in(text);
    CsvTable back = read_csv(in, "mem");
    CHECK(back.header == t.header);
    CHECK(back.rows == t.rows);
    CHECK(to_csv(back) == text);
  }
}

TEST_CASE("csv errors carry locations") {
  std::istringstream uneven("a,b\n1,2\n3\n");
  CHECK_THROWS_WITH_AS(read_csv(uneven, "x.csv"), doctest::Contains("x.csv:3"),
                       std::runtime_error);
  std::istringstream quoted("a,b\n\"1\",2\n");
  CHECK_THROWS(read_csv(quoted, "q.csv"));
  std::istringstream empty("");
  CHECK_THROWS(read_csv(empty, "e.csv"));
}

TEST_CASE("atomic write replaces the target completely") {
  fs::path p = fs::temp_directory_path() / "collatz_atomic_test.txt";
  write_file_atomic(p, "first\n");
  write_file_atomic(p, "second\n");
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  CHECK(line == "second");
  CHECK(!fs::exists(p.string() + ".tmp"));
  fs::remove(p);
}

TEST_CASE("bundled fixtures parse under the strict reader") {
  CsvTable a1 = read_csv_file(kData / "table_a1.csv");
  CHECK(a1.rows.size() == 128);
  CHECK(a1.header.size() == 22);
  CHECK(a1.column("StateID_128") == 0);
  CHECK(a1.column("v2_possible_gain") == 21);

  CsvTable a2 = read_csv_file(kData / "table_a2.csv");
  CHECK(a2.rows.size() == 22);
  CHECK(a2.header.size() == 11);

  CsvTable t2 = read_csv_file(kData / "table_2.csv");
  CHECK(t2.rows.size() == 16);
}

TEST_CASE("table renderings are deterministic") {
  CHECK(render_table1() == render_table1());
  CHECK(render_table2() == render_table2());
  CHECK(render_tableB1() == render_tableB1());
  CHECK(render_figure2(Nat(1639)) == render_figure2(Nat(1639)));
}

TEST_CASE("table 1 worked column for start 7 and the dash convention") {
  std::string t1 = render_table1();
  std::istringstream in(t1);
  CsvTable grid = read_csv(in, "table1");
  // column for start 7 reads 7,11,17,26,13,20,10,5,8,4,2,1 then dashes
  int col7 = grid.column("7");
  REQUIRE(col7 > 0);
  std::vector<std::string> want{"7", "11", "17", "26", "13", "20", "10", "5", "8", "4", "2", "1"};
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(grid.rows[i][col7] == want[i]);
  for (std::size_t i = want.size(); i < grid.rows.size(); ++i) CHECK(grid.rows[i][col7] == "-");
  // n=1 terminates immediately: dash from step 2 on
  CHECK(grid.rows[0][1] == "1");
  CHECK(grid.rows[1][1] == "-");
  // depth follows the longest of the 19 starts (15 steps, reached by 18 and 19)
  CHECK(grid.rows.size() == 15);
}

TEST_CASE("table B1 block for base class 3, column h1=27") {
  std::string b1 = render_tableB1();
  std::istringstream in(b1);
  CsvTable t = read_csv(in, "tableB1");
  // locate the base-class-3 block; h1=27 is octave column 4 (A1=4)
  std::size_t block = 0;
  for (; block < t.rows.size(); ++block)
    if (t.rows[block][0] == "base_class_B3") break;
  REQUIRE(block < t.rows.size());
  CHECK(t.rows[block + 1][0] == "h1");
  CHECK(t.rows[block + 1][4] == "27");
  CHECK(t.rows[block + 3][0] == "h2");
  CHECK(t.rows[block + 3][4] == "41");
  CHECK(t.rows[block + 4][4] == "62");
  CHECK(t.rows[block + 5][4] == "31");
  CHECK(t.rows[block + 6][4] == "47");
}

TEST_CASE("table 2 diff flags the octave errata and the k_b cells") {
  auto diffs = diff_table2(kData / "table_2.csv");
  std::set<int> octave_rows;
  bool a15 = false, a9 = false;
  for (const auto& d : diffs) {
    if (d.octave_column) octave_rows.insert(d.h);
    if (d.h == 15 && d.column == "A_next") {
      a15 = true;
      CHECK(d.computed == "3");
      CHECK(d.fixture == "2");
    }
    if (d.h == 9 && d.column == "A_next") {
      a9 = true;
      CHECK(d.computed == "2");
      CHECK(d.fixture == "1");
    }
    CHECK(d.column != "h_next");
    CHECK(d.column != "B_next");
  }
  CHECK(a15);
  CHECK(a9);
  CHECK(octave_rows == std::set<int>{9, 15});
}
