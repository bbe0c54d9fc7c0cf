#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "bracketeer/gauss.hpp"

using namespace bracketeer;

namespace {

std::string word_to_code(const std::vector<int>& word, const std::vector<int>& signs) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ' ';
    out += 'a' + std::to_string(word[i]);
    out += signs[static_cast<std::size_t>(word[i])] > 0 ? '+' : '-';
  }
  return out;
}

std::pair<std::vector<int>, std::vector<int>> random_word(std::mt19937& rng, int n) {
  std::vector<int> word;
  for (int i = 0; i < n; ++i) {
    word.push_back(i);
    word.push_back(i);
  }
  std::shuffle(word.begin(), word.end(), rng);
  std::vector<int> signs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) signs[static_cast<std::size_t>(i)] = (rng() & 1) ? 1 : -1;
  return {word, signs};
}

}  // namespace

TEST_CASE("gauss code parsing") {
  SECTION("two positive interlaced crossings") {
    GaussCode c = parse_gauss("a+ b+ a+ b+");
    CHECK(c.crossings() == 2);
    CHECK(c.signs == std::vector<int>{1, 1});
    CHECK(c.writhe() == 2);
  }
  SECTION("three crossings") {
    GaussCode c = parse_gauss("a+ b+ c+ a+ b+ c+");
    CHECK(c.crossings() == 3);
    CHECK(c.writhe() == 3);
  }
  SECTION("sign may be given on only one passage") {
    GaussCode c = parse_gauss("a+ b a b-");
    CHECK(c.signs == std::vector<int>{1, -1});
    CHECK(c.writhe() == 0);
  }
  SECTION("over/under decorations are validated then dropped") {
    GaussCode c = parse_gauss("Oa+ Ub+ Ua+ Ob+");
    CHECK(c.crossings() == 2);
    CHECK_THROWS_AS(parse_gauss("Oa+ b+ Oa+ b+"), input_error);
    CHECK_THROWS_AS(parse_gauss("Oa+ b+ a+ b+"), input_error);
  }
  SECTION("malformed inputs") {
    CHECK_THROWS_AS(parse_gauss("a+ b+ a-"), input_error);  // conflict and odd occurrence
    CHECK_THROWS_AS(parse_gauss("a b a b"), input_error);   // both passages unsigned
    CHECK_THROWS_AS(parse_gauss("a+ a+ a+ x+ x+"), input_error);
    CHECK_THROWS_AS(parse_gauss("+ +"), input_error);
    CHECK_THROWS_AS(parse_gauss("a_b+ a_b+"), input_error);
  }
  SECTION("writhe equals n minus twice the negative count") {
    GaussCode c = parse_gauss("a- b+ c- a- b+ c-");
    CHECK(c.writhe() == c.crossings() - 2 * interlacement_graph(c).loop_count());
  }
}

TEST_CASE("interlacement graphs") {
  SECTION("alternating pair gives a single edge") {
    LoopedGraph g = interlacement_graph(parse_gauss("a+ b+ a+ b+"));
    CHECK(g == make_family(Family::path, 2));
  }
  SECTION("trefoil word gives the triangle") {
    LoopedGraph g = interlacement_graph(parse_gauss("a+ b+ c+ a+ b+ c+"));
    CHECK(g == make_family(Family::complete, 3));
  }
  SECTION("nested occurrences give no edges") {
    LoopedGraph g = interlacement_graph(parse_gauss("a+ a+ b+ b+"));
    CHECK(g == make_family(Family::edgeless, 2));
  }
  SECTION("negative crossings become loops") {
    LoopedGraph g = interlacement_graph(parse_gauss("a- b+ a- b+"));
    CHECK(g.has_edge(0, 1));
    CHECK(g.loop(0));
    CHECK_FALSE(g.loop(1));
  }
}

TEST_CASE("interlacement is stable under rotation and reversal") {
  std::mt19937 rng(404);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + static_cast<int>(rng() % 6);
    auto [word, signs] = random_word(rng, n);
    LoopedGraph base = interlacement_graph(parse_gauss(word_to_code(word, signs)));
    std::vector<int> rotated = word;
    std::rotate(rotated.begin(), rotated.begin() + static_cast<long>(rng() % word.size()),
                rotated.end());
    std::vector<int> reversed = word;
    std::reverse(reversed.begin(), reversed.end());
    CHECK(canonical_form(interlacement_graph(parse_gauss(word_to_code(rotated, signs)))) ==
          canonical_form(base));
    CHECK(canonical_form(interlacement_graph(parse_gauss(word_to_code(reversed, signs)))) ==
          canonical_form(base));
  }
}

TEST_CASE("switching one crossing toggles exactly one loop") {
  std::mt19937 rng(505);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + static_cast<int>(rng() % 6);
    auto [word, signs] = random_word(rng, n);
    LoopedGraph before = interlacement_graph(parse_gauss(word_to_code(word, signs)));
    int flip = static_cast<int>(rng() % n);
    std::vector<int> flipped = signs;
    flipped[static_cast<std::size_t>(flip)] *= -1;
    LoopedGraph after = interlacement_graph(parse_gauss(word_to_code(word, flipped)));
    // vertex ids follow first-occurrence order, not label order
    std::vector<int> vertex_of(static_cast<std::size_t>(n), -1);
    int next_id = 0;
    for (int c : word)
      if (vertex_of[static_cast<std::size_t>(c)] < 0) vertex_of[static_cast<std::size_t>(c)] = next_id++;
    LoopedGraph expected = before;
    expected.toggle_loop(vertex_of[static_cast<std::size_t>(flip)]);
    CHECK(after == expected);
  }
}

TEST_CASE("knot invariants") {
  SECTION("one-kink unknot") {
    KnotInvariants inv = knot_invariants(parse_gauss("a+ a+"));
    CHECK(inv.graph == make_family(Family::edgeless, 1));
    CHECK(inv.jones.is_one());
  }
  SECTION("virtual two-crossing knot") {
    KnotInvariants inv = knot_invariants(parse_gauss("a+ b+ a+ b+"));
    QuarterPoly expected;  // t + t^(3/2) - t^(5/2)
    expected.add_term(4, 1);
    expected.add_term(6, 1);
    expected.add_term(10, -1);
    CHECK(inv.jones == expected);
  }
  SECTION("trefoil") {
    KnotInvariants inv = knot_invariants(parse_gauss("a+ b+ c+ a+ b+ c+"));
    OnePoly reduced = OnePoly::term(-7, 1) + OnePoly::term(-3, -1) + OnePoly::term(5, -1);
    CHECK(inv.reduced == reduced);
    CHECK(inv.jones.to_string() == "-t^4 + t^3 + t");
    CHECK(inv.writhe == 3);
  }
  SECTION("empty code is the trivial diagram") {
    KnotInvariants inv = knot_invariants(parse_gauss(""));
    CHECK(inv.graph.n() == 0);
    CHECK(inv.jones.is_one());
  }
}

TEST_CASE("the two jones routes agree on random codes") {
  std::mt19937 rng(606);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + static_cast<int>(rng() % 7);
    auto [word, signs] = random_word(rng, n);
    CHECK_NOTHROW(knot_invariants(parse_gauss(word_to_code(word, signs))));
  }
}

TEST_CASE("eulerian degree check") {
  CHECK(eulerian_check(make_family(Family::complete, 3)));
  CHECK_FALSE(eulerian_check(make_family(Family::path, 2)));
  CHECK(eulerian_check(make_family(Family::edgeless, 5)));
  LoopedGraph l1 = make_family(Family::lollipop, 1);
  CHECK(eulerian_check(l1));  // loops do not count toward the degree
}
