// Acceptance suite: runs every release criterion and prints one verdict
// line per criterion. Exits nonzero when any of them fails.

#include <cstdio>
#include <string>
#include <vector>

#include "bracketeer/selftest.hpp"

using namespace bracketeer;
using selftest::Outcome;

namespace {

struct Criterion {
  int id;
  std::string description;
  bool pass;
  std::string detail;
  double seconds;
};

std::vector<Criterion> criteria;

void record(int id, const std::string& description, const Outcome& outcome,
            bool extra_condition = true, const std::string& extra_note = "") {
  std::string detail = outcome.detail;
  if (!extra_note.empty()) detail += (detail.empty() ? "" : "; ") + extra_note;
  criteria.push_back({id, description, outcome.pass && extra_condition, detail, outcome.seconds});
}

}  // namespace

int main() {
  bool mixed_connectivity = false;
  double search_median = 0.0;

  Outcome looped6 = selftest::census_looped6(&mixed_connectivity);
  record(1, "six-vertex looped census: 5096 classes, 5027 distinct brackets", looped6,
         looped6.seconds <= 300.0);

  Outcome simple7 = selftest::census_simple7();
  record(2, "seven-vertex simple census: 1044 classes, 1028 distinct brackets", simple7,
         simple7.seconds <= 300.0);

  record(3, "perfect discrimination: looped n<=5 and simple n=6, both variants",
         selftest::census_small());

  Outcome engines = selftest::engine_equivalence(5, 200, 10, 1);
  record(4, "engine equivalence on the small census and 200 random graphs", engines,
         engines.seconds <= 120.0);

  record(5, "closed forms: complete n<=8, lollipop n<=10, path displays n<=10",
         selftest::closed_forms(8, 10, 10));

  record(6, "identity suite over the n<=5 census (z-substitution at n<=4)",
         selftest::identity_suite(5, 4, 2));

  record(7, "jones invariance under 1000 randomized legal moves (n<=7)",
         selftest::move_invariance(1000, 7, 3));

  record(8, "knot pipeline: kink unknot, two-crossing virtual knot, trefoil",
         selftest::knot_pipeline());

  record(9, "no loop assignment trivializes the six-vertex path", selftest::p6_loop_assignments());

  record(10, "configuration table oracle and the eight-word correspondence",
         selftest::config_table_and_words());

  Outcome search = selftest::search_roundtrip(100, 5, 4, &search_median);
  record(11, "search round-trips 100 scrambles within bounds, median <= 10s", search,
         search_median <= 10.0);

  Outcome collision{"collision connectivity", mixed_connectivity,
                    mixed_connectivity ? "a collision pair mixes connectivity classes"
                                       : "no mixed-connectivity collision found",
                    0.0};
  record(12, "a six-vertex bracket collision pair differs in connectivity", collision);

  bool all = true;
  for (const Criterion& c : criteria) {
    std::printf("[%s] %2d. %s — %s (%.2fs)\n", c.pass ? "PASS" : "FAIL", c.id,
                c.description.c_str(), c.detail.c_str(), c.seconds);
    all = all && c.pass;
  }
  std::printf("%s\n", all ? "acceptance: all criteria satisfied"
                          : "acceptance: at least one criterion failed");
  return all ? 0 : 1;
}
