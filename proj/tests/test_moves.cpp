#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bracketeer/moves.hpp"

using namespace bracketeer;

namespace {

LoopedGraph random_graph(std::mt19937& rng, int n, bool with_loops = true) {
  LoopedGraph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j)
      if (rng() & 1) g.set_edge(i, j);
    if (with_loops && (rng() & 1)) g.set_loop(i);
  }
  return g;
}

LoopedGraph replay(const LoopedGraph& start, const std::vector<MoveDescriptor>& path, int cap) {
  LoopedGraph cur = decode_canonical(canonical_form(start, cap));
  for (const MoveDescriptor& m : path)
    cur = decode_canonical(canonical_form(apply_move(cur, m), cap));
  return cur;
}

}  // namespace

TEST_CASE("configuration table derivation") {
  ConfigTableReport report = derive_config_table();
  CHECK(report.candidate_pairs == 10);
  CHECK(report.surviving_pairs == 6);
  CHECK(report.matches_reference);
  SECTION("a non-listed configuration fails the oracle") {
    // path with a single loop at its center
    LoopedGraph center_loop(3);
    center_loop.set_edge(0, 1);
    center_loop.set_edge(0, 2);
    center_loop.set_loop(0);
    std::string canon = canonical_form(center_loop);
    for (const LoopedGraph& c : report.configs) CHECK(canonical_form(c) != canon);
    CHECK_FALSE(omega3_legal_forms().count(canon));
  }
  SECTION("reference members carry the announced shapes") {
    int triangles = 0, paths = 0;
    for (const LoopedGraph& c : report.configs) {
      if (c.edge_count() == 3) ++triangles;
      if (c.edge_count() == 2) ++paths;
    }
    CHECK(triangles == 2);
    CHECK(paths == 4);
  }
  SECTION("the table is closed under full loop toggling, in pairs") {
    auto reference = detail::reference_configs();
    REQUIRE(reference.size() == 6);
    for (std::size_t i = 0; i < reference.size(); i += 2)
      CHECK(isomorphic(reference[i].toggle_all_loops(), reference[i + 1]));
  }
}

TEST_CASE("word correspondences") {
  std::vector<WordCorrespondence> report = word_correspondence_check();
  REQUIRE(report.size() == 8);
  for (const auto& entry : report) {
    CHECK(entry.shape_ok);
    CHECK(entry.transposed_ok);
  }
  CHECK(isomorphic(detail::word_shape("ABCABC"), make_family(Family::complete, 3)));
  LoopedGraph path_center_b(3);  // A-B, B-C
  path_center_b.set_edge(0, 1);
  path_center_b.set_edge(1, 2);
  CHECK(isomorphic(detail::word_shape("ABACBC"), path_center_b));
  CHECK(isomorphic(detail::word_shape("ABBCCA"), make_family(Family::edgeless, 3)));
}

TEST_CASE("move descriptors serialize and parse") {
  for (const char* text : {"O1+ looped", "O1+ unlooped", "O1- 3", "O2+ S={0,2} adj loopedfirst",
                           "O2+ S={} nonadj loopedfirst", "O2- 1 4", "O3 0 1 2"}) {
    MoveDescriptor m = MoveDescriptor::parse(text);
    CHECK(m.to_string() == text);
  }
  CHECK_THROWS_AS(MoveDescriptor::parse("O4 1"), input_error);
  CHECK_THROWS_AS(MoveDescriptor::parse("O1+ sideways"), input_error);
  CHECK_THROWS_AS(MoveDescriptor::parse("O3 0 1"), input_error);
}

TEST_CASE("move enumeration on a single vertex") {
  auto moves = enumerate_moves(make_family(Family::edgeless, 1), 2);
  int o1_insert = 0, o1_remove = 0, o2_insert = 0, other = 0;
  for (const auto& [m, h] : moves) {
    if (m.kind == MoveKind::omega1 && m.insert)
      ++o1_insert;
    else if (m.kind == MoveKind::omega1)
      ++o1_remove;
    else if (m.kind == MoveKind::omega2 && m.insert)
      ++o2_insert;
    else
      ++other;
  }
  CHECK(o1_insert == 2);
  CHECK(o1_remove == 1);
  CHECK(o2_insert == 4);  // S in {{}, {v}} x {adj, nonadj}
  CHECK(other == 0);
  CHECK(enumerate_moves(make_family(Family::edgeless, 1), 0).size() == 1);
}

TEST_CASE("omega2 removal peels the doubled pair off an edgeless core") {
  // E_3 plus looped v and unlooped w, both adjacent to everything and to
  // each other
  int n = 3;
  LoopedGraph g(n + 2);
  int v = n, w = n + 1;
  g.set_loop(v);
  for (int x = 0; x < n; ++x) {
    g.set_edge(v, x);
    g.set_edge(w, x);
  }
  g.set_edge(v, w);
  bool found = false;
  for (const auto& [m, h] : enumerate_moves(g, 0))
    if (m.kind == MoveKind::omega2 && !m.insert && m.v == v && m.w == w) {
      found = true;
      CHECK(h == make_family(Family::edgeless, n));
    }
  CHECK(found);
}

TEST_CASE("the switching pair is one omega3 toggle apart") {
  LoopedGraph g1(3), g2(3);
  g1.set_edge(0, 1);
  g1.set_loop(1);
  g2.set_edge(0, 2);
  g2.set_edge(1, 2);
  g2.set_loop(1);
  MoveDescriptor m = MoveDescriptor::parse("O3 0 1 2");
  CHECK(apply_move(g1, m) == g2);
  bool listed = false;
  for (const auto& [mv, h] : enumerate_moves(g1, 0))
    if (mv.kind == MoveKind::omega3) listed = true;
  CHECK(listed);
}

TEST_CASE("apply_move examples") {
  SECTION("omega1 insert on the empty graph") {
    CHECK(apply_move(make_family(Family::edgeless, 0), MoveDescriptor::parse("O1+ looped")) ==
          make_family(Family::lollipop, 1));
  }
  SECTION("omega2 insert with one neighbor, adjacent pair") {
    LoopedGraph g = apply_move(make_family(Family::edgeless, 1),
                               MoveDescriptor::parse("O2+ S={0} adj loopedfirst"));
    REQUIRE(g.n() == 3);
    CHECK(g.has_edge(1, 0));
    CHECK(g.has_edge(2, 0));
    CHECK(g.has_edge(1, 2));
    CHECK(g.loop(1));
    CHECK_FALSE(g.loop(2));
    CHECK(g.edge_count() == 3);
  }
  SECTION("omega3 empties a legal triangle") {
    LoopedGraph g(4);  // triangle with a loop at 0, plus a 2-attached witness
    g.set_edge(0, 1);
    g.set_edge(0, 2);
    g.set_edge(1, 2);
    g.set_loop(0);
    g.set_edge(3, 0);
    g.set_edge(3, 1);
    LoopedGraph h = apply_move(g, MoveDescriptor::parse("O3 0 1 2"));
    CHECK(h.edge_count() == 2);  // only the witness edges remain
    CHECK(h.loop(0));
  }
}

TEST_CASE("illegal moves name the violated clause") {
  LoopedGraph p2 = make_family(Family::path, 2);
  CHECK_THROWS_WITH(apply_move(p2, MoveDescriptor::parse("O1- 0")),
                    Catch::Matchers::ContainsSubstring("isolated"));
  LoopedGraph g(3);
  g.set_loop(0);
  g.set_edge(0, 2);
  CHECK_THROWS_WITH(apply_move(g, MoveDescriptor::parse("O2- 0 1")),
                    Catch::Matchers::ContainsSubstring("neighborhoods"));
  LoopedGraph bad_context(4);
  bad_context.set_edge(0, 1);
  bad_context.set_edge(0, 2);
  bad_context.set_edge(3, 0);  // outside vertex touching exactly one
  CHECK_THROWS_WITH(apply_move(bad_context, MoveDescriptor::parse("O3 0 1 2")),
                    Catch::Matchers::ContainsSubstring("0 or 2"));
  LoopedGraph not_listed(3);  // path with only the center looped
  not_listed.set_edge(0, 1);
  not_listed.set_edge(0, 2);
  not_listed.set_loop(0);
  CHECK_THROWS_WITH(apply_move(not_listed, MoveDescriptor::parse("O3 0 1 2")),
                    Catch::Matchers::ContainsSubstring("configuration"));
}

TEST_CASE("every remove has a matching insert back") {
  std::mt19937 rng(2025);
  int checked = 0;
  for (int trial = 0; trial < 120 && checked < 40; ++trial) {
    LoopedGraph g = random_graph(rng, 1 + static_cast<int>(rng() % 6));
    for (const auto& [m, h] : enumerate_moves(g, 0)) {
      bool recovered = false;
      for (const auto& [back, h2] : enumerate_moves(h, 2))
        if (isomorphic(h2, g)) recovered = true;
      CHECK(recovered);
      ++checked;
    }
  }
  CHECK(checked >= 40);
}

TEST_CASE("omega3 is a self-inverse toggle") {
  std::mt19937 rng(77);
  int checked = 0;
  for (int trial = 0; trial < 300 && checked < 30; ++trial) {
    LoopedGraph g = random_graph(rng, 3 + static_cast<int>(rng() % 4));
    for (const auto& [m, h] : enumerate_moves(g, 0)) {
      if (m.kind != MoveKind::omega3) continue;
      CHECK(apply_move(h, m) == g);
      ++checked;
    }
  }
  CHECK(checked >= 30);
}

TEST_CASE("jones survives random legal moves") {
  std::mt19937 rng(424242);
  int applied = 0;
  while (applied < 200) {
    int n = 1 + static_cast<int>(rng() % 6);
    LoopedGraph g = random_graph(rng, n);
    auto moves = enumerate_moves(g, 2);
    if (moves.empty()) continue;
    const auto& [m, h] = moves[rng() % moves.size()];
    CHECK(jones(h) == jones(g));
    OnePoly before = reduced_bracket(g), after = reduced_bracket(h);
    if (m.kind == MoveKind::omega1) {
      bool inserted_loop = m.insert ? m.looped : g.loop(m.v);
      OnePoly factor = OnePoly::term(inserted_loop ? -3 : 3, -1);  // -A^-3 / -A^3
      if (m.insert)
        CHECK(after == before * factor);
      else
        CHECK(before == after * factor);
    } else {
      CHECK(after == before);
    }
    ++applied;
  }
}

TEST_CASE("wheel-like pair shares its jones polynomial") {
  for (int m = 1; m <= 4; ++m) {
    LoopedGraph gamma(m + 1);
    gamma.set_edge(0, 1);
    for (int i = 2; i <= m; ++i) {
      gamma.set_edge(i, 0);
      gamma.set_edge(i, 1);
    }
    LoopedGraph gamma_prime(m + 2);
    for (int i = 2; i <= m + 1; ++i) {
      gamma_prime.set_edge(i, 0);
      gamma_prime.set_edge(i, 1);
    }
    CHECK(jones(gamma) == jones(gamma_prime));
    OnePoly scaled = reduced_bracket(gamma) * OnePoly::term(3, -1);
    CHECK(reduced_bracket(gamma_prime) == scaled);
  }
}

TEST_CASE("search finds the two-step reduction from E_2") {
  SearchResult r = equivalence_search(make_family(Family::edgeless, 2),
                                      make_family(Family::edgeless, 0), 4, 10000);
  REQUIRE(r.found);
  CHECK(r.path.size() == 2);
  for (const auto& m : r.path) {
    CHECK(m.kind == MoveKind::omega1);
    CHECK_FALSE(m.insert);
  }
  CHECK(replay(make_family(Family::edgeless, 2), r.path, 4).n() == 0);
}

TEST_CASE("search round-trips three-move scrambles") {
  std::mt19937 rng(8899);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    int max_vertices = n + 6;
    LoopedGraph g = random_graph(rng, n);
    LoopedGraph scrambled = g;
    for (int step = 0; step < 3; ++step) {
      int budget = std::min(2, max_vertices - scrambled.n());
      auto moves = enumerate_moves(scrambled, budget);
      if (moves.empty()) break;
      scrambled = moves[rng() % moves.size()].second;
    }
    SearchResult r = equivalence_search(g, scrambled, max_vertices, 100000);
    REQUIRE(r.found);
    CHECK(canonical_form(replay(g, r.path, max_vertices), max_vertices) ==
          canonical_form(scrambled, max_vertices));
  }
}

TEST_CASE("search respects its bounds and cannot certify inequivalence") {
  LoopedGraph l1 = make_family(Family::lollipop, 1), e1 = make_family(Family::edgeless, 1);
  SearchResult truncated = equivalence_search(l1, e1, 2, 1);
  CHECK_FALSE(truncated.found);
  CHECK(truncated.expansions <= 1);
  // not_found proves nothing: wider bounds reach E_1 through E_0, and the
  // jones polynomial (1 on both sides) could not have separated them anyway
  SearchResult full = equivalence_search(l1, e1, 2, 100);
  CHECK(full.found);
  CHECK(full.path.size() == 2);
  CHECK(jones(l1).is_one());
  CHECK(jones(e1).is_one());
  CHECK_THROWS_AS(equivalence_search(l1, make_family(Family::edgeless, 3), 2, 10), input_error);
}
