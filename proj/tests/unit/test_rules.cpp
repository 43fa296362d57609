#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "collatz/rules.hpp"

using namespace collatz;

TEST_CASE("the 16 selection rules") {
  // odd octave
  int odd[9] = {0, 2, 1, 5, 2, 8, 3, 3, 4};
  // even octave
  int even[9] = {0, 6, 5, 1, 6, 4, 7, 7, 8};
  for (int b = 1; b <= 8; ++b) {
    CHECK(next_base(b, 1) == odd[b]);
    CHECK(next_base(b, 0) == even[b]);
  }
  CHECK(next_base(7, 0) == 7);
  CHECK(next_base(6, 0) == 7);
  CHECK(next_base(5, 1) == 8);
  CHECK_THROWS_AS(next_base(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(next_base(3, 2), std::invalid_argument);
}

TEST_CASE("selection rules are exhaustive over a dense range") {
  for (long long h = 1; h <= 200000; ++h) {
    BaseOctave cur = to_base_octave(Nat(h));
    BaseOctave nxt = to_base_octave(step(Nat(h)));
    CHECK(next_base(cur.base, static_cast<int>(cur.octave & 1)) == nxt.base);
  }
}

TEST_CASE("step in base-octave coordinates") {
  BaseOctave r = step_base_octave({7, Nat(1)});
  CHECK(r == BaseOctave{3, Nat(2)});
  r = step_base_octave({2, Nat(2)});
  CHECK(r == BaseOctave{5, Nat(1)});
  r = step_base_octave({8, Nat(2)});
  CHECK(r == BaseOctave{8, Nat(1)});
}

TEST_CASE("closed forms match the exact update") {
  CHECK(closed_form_update(7, Nat(4)) == BaseOctave{7, Nat(6)});      // 31 -> 47
  CHECK(to_base_octave(step(Nat(31))) == BaseOctave{7, Nat(6)});
  CHECK(closed_form_update(2, Nat(2)) == BaseOctave{5, Nat(1)});      // 10 -> 5
  CHECK(closed_form_update(8, Nat(2)) == BaseOctave{8, Nat(1)});      // 16 -> 8
  for (int b = 1; b <= 8; ++b)
    for (long long a = 1; a <= 10000; ++a)
      CHECK(closed_form_update(b, Nat(a)) == step_base_octave({b, Nat(a)}));
}

TEST_CASE("derived closed forms for the gateway bases 3 and 5") {
  for (long long a = 1; a <= 10000; ++a) {
    Nat A(a);
    BaseOctave got3 = step_base_octave({3, A});
    BaseOctave got5 = step_base_octave({5, A});
    if (a % 2 == 1) {
      CHECK(got3 == BaseOctave{5, (3 * A - 1) / 2});
      CHECK(got5 == BaseOctave{8, 1 + 3 * (A - 1) / 2});
    } else {
      CHECK(got3 == BaseOctave{1, 3 * A / 2});
      CHECK(got5 == BaseOctave{4, 1 + (3 * A - 2) / 2});
    }
  }
}

TEST_CASE("base transition graph shape") {
  BaseGraph g = build_base_graph();
  CHECK(g.edges.size() == 16);
  for (int b = 1; b <= 8; ++b) CHECK(g.out_degree(b) == 2);
  auto loops = g.self_loops();
  REQUIRE(loops.size() == 2);
  CHECK(loops[0].from == 7);
  CHECK(loops[0].octave_parity == 0);
  CHECK(loops[1].from == 8);
  CHECK(loops[1].octave_parity == 0);
}

TEST_CASE("re-entry into base 7 only through 6, in an even octave") {
  BaseGraph g = build_base_graph();
  for (const BaseEdge& e : g.edges) {
    if (e.to == 7 && e.from != 7) {
      CHECK(e.from == 6);
      CHECK(e.octave_parity == 0);
    }
  }
}

TEST_CASE("gateway bases hand off to even bases") {
  // from 5, both octave parities reach an even base immediately
  CHECK(next_base(5, 0) % 2 == 0);
  CHECK(next_base(5, 1) % 2 == 0);
  // from 3, an even base is reached within at most two steps on every branch
  for (int p3 : {0, 1}) {
    int b1 = next_base(3, p3);
    if (b1 % 2 == 0) continue;
    for (int p : {0, 1}) CHECK(next_base(b1, p) % 2 == 0);
  }
}

TEST_CASE("DOT export carries the parity attributes") {
  std::string dot = to_dot(build_base_graph());
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("B7 -> B7 [parity=\"even\"]") != std::string::npos);
  CHECK(dot.find("B8 -> B8 [parity=\"even\"]") != std::string::npos);
  CHECK(dot.find("B7 -> B3 [parity=\"odd\"]") != std::string::npos);
  std::size_t count = 0, pos = 0;
  while ((pos = dot.find("parity=", pos)) != std::string::npos) {
    ++count;
    ++pos;
  }
  CHECK(count == 16);
}

TEST_CASE("itinerary validation") {
  Trajectory t7 = run_trajectory(Nat(7));
  CHECK(validate_itinerary(t7).empty());
  std::vector<int> bases;
  for (const Nat& v : t7.values) bases.push_back(to_base_octave(v).base);
  CHECK(bases == std::vector<int>{7, 3, 1, 2, 5, 4, 2, 5, 8, 4, 2, 1});

  CHECK(validate_itinerary(run_trajectory(Nat(20))).empty());

  std::vector<Nat> corrupted{Nat(7), Nat(12)};
  auto violations = validate_value_sequence(corrupted);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].from_base == 7);
  CHECK(violations[0].expected_base == 3);
  CHECK(violations[0].actual_base == 4);

  Trajectory t1 = run_trajectory(Nat(1));
  CHECK_THROWS_AS(validate_itinerary(t1), std::invalid_argument);
}
