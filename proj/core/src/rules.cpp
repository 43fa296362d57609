#include "collatz/rules.hpp"

#include <sstream>
#include <stdexcept>

namespace collatz {

namespace {
// Indexed [s_a][B-1].
constexpr int kNextBase[2][8] = {
    {6, 5, 1, 6, 4, 7, 7, 8},  // even octave (s_a = 0)
    {2, 1, 5, 2, 8, 3, 3, 4},  // odd octave (s_a = 1)
};
}  // namespace

int next_base(int base, int s_a) {
  if (base < 1 || base > 8) throw std::invalid_argument("next_base: base must be in 1..8");
  if (s_a != 0 && s_a != 1) throw std::invalid_argument("next_base: parity bit expected");
  return kNextBase[s_a][base - 1];
}

BaseOctave step_base_octave(const BaseOctave& bo) {
  return to_base_octave(step(from_base_octave(bo)));
}

BaseOctave closed_form_update(int base, const Nat& octave) {
  if (octave < 1) throw std::invalid_argument("closed_form_update: octave must be >= 1");
  const Nat& A = octave;
  const bool odd_A = ((A & 1) == 1);
  switch (base) {
    case 1:  // h' = 12A - 10
      return odd_A ? BaseOctave{2, 1 + 3 * (A - 1) / 2} : BaseOctave{6, (3 * A - 2) / 2};
    case 2:  // h' = 4A - 3
      return odd_A ? BaseOctave{1, (A + 1) / 2} : BaseOctave{5, A / 2};
    case 4:
      return odd_A ? BaseOctave{2, (A + 1) / 2} : BaseOctave{6, A / 2};
    case 6:
      return odd_A ? BaseOctave{3, (A + 1) / 2} : BaseOctave{7, A / 2};
    case 7:  // h' = 12A - 1
      return odd_A ? BaseOctave{3, (3 * A + 1) / 2} : BaseOctave{7, 3 * A / 2};
    case 8:  // h' = 4A
      return odd_A ? BaseOctave{4, (A + 1) / 2} : BaseOctave{8, A / 2};
    case 3:
    case 5:
      return step_base_octave(BaseOctave{base, A});
    default:
      throw std::invalid_argument("closed_form_update: base must be in 1..8");
  }
}

std::vector<BaseEdge> BaseGraph::edges_from(int base) const {
  std::vector<BaseEdge> out;
  for (const BaseEdge& e : edges)
    if (e.from == base) out.push_back(e);
  return out;
}

int BaseGraph::out_degree(int base) const { return static_cast<int>(edges_from(base).size()); }

std::vector<BaseEdge> BaseGraph::self_loops() const {
  std::vector<BaseEdge> out;
  for (const BaseEdge& e : edges)
    if (e.from == e.to) out.push_back(e);
  return out;
}

BaseGraph build_base_graph() {
  BaseGraph g{};
  std::size_t i = 0;
  for (int base = 1; base <= 8; ++base)
    for (int s_a : {1, 0}) g.edges[i++] = BaseEdge{base, s_a, next_base(base, s_a)};
  return g;
}

std::string to_dot(const BaseGraph& g) {
  std::ostringstream os;
  os << "digraph base_transitions {\n";
  for (int base = 1; base <= 8; ++base) os << "  B" << base << ";\n";
  for (const BaseEdge& e : g.edges) {
    os << "  B" << e.from << " -> B" << e.to << " [parity=\""
       << (e.octave_parity ? "odd" : "even") << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::vector<ItineraryViolation> validate_value_sequence(const std::vector<Nat>& values) {
  std::vector<ItineraryViolation> out;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    BaseOctave cur = to_base_octave(values[i]);
    BaseOctave nxt = to_base_octave(values[i + 1]);
    int parity = static_cast<int>(cur.octave & 1);
    int expected = next_base(cur.base, parity);
    if (expected != nxt.base)
      out.push_back({i, values[i], cur.base, parity, expected, nxt.base});
  }
  return out;
}

std::vector<ItineraryViolation> validate_itinerary(const Trajectory& traj) {
  if (traj.values.size() < 2)
    throw std::invalid_argument("validate_itinerary: trajectory must have length >= 2");
  return validate_value_sequence(traj.values);
}

}  // namespace collatz
