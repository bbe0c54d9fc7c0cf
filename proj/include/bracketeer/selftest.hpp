#pragma once

#include <chrono>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bracketeer/bracket.hpp"
#include "bracketeer/census.hpp"
#include "bracketeer/gauss.hpp"
#include "bracketeer/graph.hpp"
#include "bracketeer/moves.hpp"
#include "bracketeer/poly.hpp"

namespace bracketeer::selftest {

struct Outcome {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail {

inline LoopedGraph random_graph(std::mt19937_64& rng, int n, bool with_loops = true) {
  LoopedGraph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j)
      if (rng() & 1) g.set_edge(i, j);
    if (with_loops && (rng() & 1)) g.set_loop(i);
  }
  return g;
}

template <typename Body>
Outcome timed(const std::string& name, Body&& body) {
  Outcome out;
  out.name = name;
  auto t0 = std::chrono::steady_clock::now();
  std::ostringstream detail;
  out.pass = body(detail);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.detail = detail.str();
  return out;
}

}  // namespace detail

inline std::vector<LoopedGraph> census_classes_up_to(int max_n, CensusKind kind) {
  std::vector<LoopedGraph> out;
  for (int n = 0; n <= max_n; ++n)
    for (LoopedGraph& g : enumerate_classes(n, kind)) out.push_back(std::move(g));
  return out;
}

// Recursive engine == state-sum engine, over every class with n <= census_max_n
// and a seeded batch of larger random graphs (6 <= n <= random_max_n).
inline Outcome engine_equivalence(int census_max_n = 5, int random_count = 200,
                                  int random_max_n = 10, std::uint64_t seed = 1) {
  return detail::timed("engine equivalence", [&](std::ostringstream& detail) {
    RecursiveBracket engine;
    std::size_t checked = 0;
    for (const LoopedGraph& g : census_classes_up_to(census_max_n, CensusKind::looped)) {
      if (engine(g) != state_sum_bracket(g)) {
        detail << "class mismatch at n=" << g.n();
        return false;
      }
      ++checked;
    }
    std::mt19937_64 rng(seed);
    for (int i = 0; i < random_count; ++i) {
      int n = 6 + static_cast<int>(rng() % static_cast<std::uint64_t>(random_max_n - 5));
      LoopedGraph g = detail::random_graph(rng, n);
      MultiPoly rec = engine(g);
      if (rec != state_sum_bracket(g)) {
        detail << "random mismatch at n=" << n << " seed item " << i;
        return false;
      }
      if (rec.min_exp(Var::A) < 0 || rec.min_exp(Var::B) < 0) {
        detail << "negative exponent leaked at n=" << n;
        return false;
      }
      ++checked;
    }
    detail << checked << " graphs";
    return true;
  });
}

// Closed-form displays equal the state sum.
inline Outcome closed_forms(int complete_max = 8, int lollipop_max = 10, int path_max = 10) {
  return detail::timed("closed forms", [&](std::ostringstream& detail) {
    for (int n = 0; n <= complete_max; ++n)
      if (closed_form_complete(n) != state_sum_bracket(make_family(Family::complete, n))) {
        detail << "complete graph failed at n=" << n;
        return false;
      }
    for (int n = 1; n <= lollipop_max; ++n)
      if (closed_form_lollipop(n) != state_sum_bracket(make_family(Family::lollipop, n))) {
        detail << "lollipop failed at n=" << n;
        return false;
      }
    for (int n = 0; n <= path_max; ++n) {
      MultiPoly oracle = state_sum_bracket(make_family(Family::path, n));
      if (closed_form_path_recurrence(n) != oracle) {
        detail << "path recurrence failed at n=" << n;
        return false;
      }
      if (closed_form_path_sum(n) != oracle) {
        detail << "path binomial display failed at n=" << n;
        return false;
      }
    }
    detail << "complete<=" << complete_max << " lollipop<=" << lollipop_max << " path<=" << path_max;
    return true;
  });
}

// The identity suite over the small census: multiplicativity, the A/B
// swap under loop toggling, jones normalization at t=1, structure
// recovery, d=1 collapse, reduced-exponent parity, the 3-vertex bracket
// difference, and both interlace-polynomial identities.
inline Outcome identity_suite(int census_max_n = 5, int z_max_n = 4, std::uint64_t seed = 2,
                                int pair_samples = 200) {
  return detail::timed("identity suite", [&](std::ostringstream& detail) {
    std::vector<LoopedGraph> classes = census_classes_up_to(census_max_n, CensusKind::looped);
    MultiPoly a = MultiPoly::variable(Var::A, 1), b = MultiPoly::variable(Var::B, 1);
    for (const LoopedGraph& g : classes) {
      int n = g.n();
      MultiPoly br = state_sum_bracket(g);
      if (state_sum_bracket(g.toggle_all_loops()) != br.swap_vars(Var::A, Var::B)) {
        detail << "loop-toggle swap failed at n=" << n;
        return false;
      }
      OnePoly reduced = reduce_single(br);
      QuarterPoly v = to_jones(reduced, n, g.loop_count());
      if (v.eval_at_one() != 1 || v.derivative_at_one_times_four() != 0) {
        detail << "jones normalization failed at n=" << n;
        return false;
      }
      auto counts = structural_counts(br);
      if (counts.vertices != n || counts.loops != g.loop_count()) {
        detail << "structure recovery failed at n=" << n;
        return false;
      }
      if (br.substitute(Var::d, MultiPoly::one()) != (a + b).pow(n)) {
        detail << "d=1 collapse failed at n=" << n;
        return false;
      }
      for (const auto& [e, c] : reduced.terms())
        if (((e % 2) + 2) % 2 != n % 2) {
          detail << "parity failed at n=" << n;
          return false;
        }
    }

    std::mt19937_64 rng(seed);
    for (int i = 0; i < pair_samples; ++i) {
      const LoopedGraph& g1 = classes[rng() % classes.size()];
      const LoopedGraph& g2 = classes[rng() % classes.size()];
      if (g1.n() + g2.n() > 10) continue;
      if (state_sum_bracket(g1.disjoint_union(g2)) !=
          state_sum_bracket(g1) * state_sum_bracket(g2)) {
        detail << "multiplicativity failed";
        return false;
      }
    }

    {
      LoopedGraph g1(3), g2(3);
      g1.set_edge(0, 1);
      g1.set_loop(1);
      g2.set_edge(0, 2);
      g2.set_edge(1, 2);
      g2.set_loop(1);
      MultiPoly d = MultiPoly::variable(Var::d, 1);
      if (state_sum_bracket(g1) - state_sum_bracket(g2) !=
          (d - MultiPoly::one()) * a * (b * b + a * b * d + a * a)) {
        detail << "three-vertex difference identity failed";
        return false;
      }
    }

    // interlace: the B->0 route assembles q(G) from induced-subgraph brackets
    MultiPoly xm1 = MultiPoly::variable(Var::x, 1) - MultiPoly::one();
    MultiPoly ym1 = MultiPoly::variable(Var::y, 1) - MultiPoly::one();
    for (const LoopedGraph& g : classes) {
      int n = g.n();
      MultiPoly total;
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        MultiPoly br = state_sum_bracket(g.induced_subgraph(s));
        for (const auto& [m, c] : br.terms()) {
          if (m.exp(Var::B) != 0) continue;
          total += xm1.pow(m.exp(Var::A) - m.exp(Var::d)) * ym1.pow(m.exp(Var::d)) * c;
        }
      }
      if (total != interlace_q(g)) {
        detail << "interlace subset identity failed at n=" << n;
        return false;
      }
    }

    // interlace: the z-substitution recovers the bracket
    MultiPoly xsub = MultiPoly::variable(Var::z, -1) + MultiPoly::one();
    MultiPoly ysub =
        MultiPoly::variable(Var::d, 1) * MultiPoly::variable(Var::z, -1) + MultiPoly::one();
    for (const LoopedGraph& g : classes) {
      int n = g.n();
      if (n > z_max_n) continue;
      MultiPoly total;
      for (std::uint64_t delta = 0; delta < (std::uint64_t{1} << n); ++delta) {
        LoopedGraph gd = g;
        for (int v = 0; v < n; ++v)
          if ((delta >> v) & 1u) gd.toggle_loop(v);
        MultiPoly q = interlace_q(gd).substitute(Var::x, xsub).substitute(Var::y, ysub);
        Monomial w;
        w.exp(Var::A) = n - std::popcount(delta);
        w.exp(Var::B) = static_cast<int>(std::popcount(delta));
        w.exp(Var::z) = n;
        total += MultiPoly::term(w, 1) * q;
      }
      if (total.min_exp(Var::z) < 0 || total.coefficient_of(Var::z, 0) != state_sum_bracket(g)) {
        detail << "z-substitution identity failed at n=" << n;
        return false;
      }
    }

    detail << classes.size() << " classes";
    return true;
  });
}

// Randomized legal moves never change the jones polynomial; omega2/omega3
// preserve the reduced bracket and omega1 scales it by -A^{+-3}.
inline Outcome move_invariance(std::size_t applications = 1000, int max_n = 7,
                               std::uint64_t seed = 3) {
  return detail::timed("reidemeister invariance", [&](std::ostringstream& detail) {
    std::mt19937_64 rng(seed);
    std::size_t applied = 0, per_kind[3] = {0, 0, 0};
    while (applied < applications) {
      int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_n));
      LoopedGraph g = detail::random_graph(rng, n);
      auto moves = enumerate_moves(g, 2);
      if (moves.empty()) continue;
      const auto& [m, h] = moves[rng() % moves.size()];
      if (jones(h) != jones(g)) {
        detail << "jones changed under " << m.to_string();
        return false;
      }
      OnePoly before = reduced_bracket(g), after = reduced_bracket(h);
      bool ok;
      if (m.kind == MoveKind::omega1) {
        bool looped = m.insert ? m.looped : g.loop(m.v);
        OnePoly factor = OnePoly::term(looped ? -3 : 3, -1);
        ok = m.insert ? after == before * factor : before == after * factor;
      } else {
        ok = after == before;
      }
      if (!ok) {
        detail << "reduced bracket relation failed under " << m.to_string();
        return false;
      }
      ++per_kind[static_cast<int>(m.kind)];
      ++applied;
    }
    detail << applied << " moves (O1:" << per_kind[0] << " O2:" << per_kind[1]
           << " O3:" << per_kind[2] << ")";
    return true;
  });
}

inline Outcome knot_pipeline() {
  return detail::timed("knot pipeline", [&](std::ostringstream& detail) {
    KnotInvariants kink = knot_invariants(parse_gauss("a+ a+"));
    if (!kink.jones.is_one()) {
      detail << "one-kink unknot is not trivial";
      return false;
    }
    KnotInvariants virt = knot_invariants(parse_gauss("a+ b+ a+ b+"));
    QuarterPoly vp2;
    vp2.add_term(4, 1);
    vp2.add_term(6, 1);
    vp2.add_term(10, -1);
    if (virt.jones != vp2) {
      detail << "two-crossing virtual knot value is wrong";
      return false;
    }
    KnotInvariants trefoil = knot_invariants(parse_gauss("a+ b+ c+ a+ b+ c+"));
    QuarterPoly vt;
    vt.add_term(16, -1);
    vt.add_term(12, 1);
    vt.add_term(4, 1);
    OnePoly rt = OnePoly::term(-7, 1) + OnePoly::term(-3, -1) + OnePoly::term(5, -1);
    if (trefoil.jones != vt || trefoil.reduced != rt) {
      detail << "trefoil value is wrong";
      return false;
    }
    detail << "kink, two-crossing, trefoil";
    return true;
  });
}

// No loop assignment turns the 6-vertex path into a graph with trivial
// jones polynomial.
inline Outcome p6_loop_assignments() {
  return detail::timed("six-vertex path loop sweep", [&](std::ostringstream& detail) {
    for (std::uint64_t loops = 0; loops < 64; ++loops) {
      LoopedGraph g = make_family(Family::path, 6);
      for (int v = 0; v < 6; ++v)
        if ((loops >> v) & 1u) g.set_loop(v);
      if (jones(g).is_one()) {
        detail << "assignment " << loops << " is trivial";
        return false;
      }
    }
    detail << "all 64 assignments nontrivial";
    return true;
  });
}

inline Outcome config_table_and_words() {
  return detail::timed("configuration table", [&](std::ostringstream& detail) {
    ConfigTableReport report = derive_config_table();
    if (!report.matches_reference) {
      detail << "derived table does not match the reference";
      return false;
    }
    std::vector<WordCorrespondence> words = word_correspondence_check();
    for (const auto& w : words)
      if (!w.shape_ok || !w.transposed_ok) {
        detail << "word " << w.word << " mismatched";
        return false;
      }
    detail << report.surviving_pairs << " pairs, " << words.size() << " words";
    return true;
  });
}

// Scramble a small graph by three random legal moves, then ask the
// bounded search to find its way back.
inline Outcome search_roundtrip(int pairs = 100, int max_base_n = 5, std::uint64_t seed = 4,
                                double* median_seconds = nullptr) {
  return detail::timed("equivalence search round-trip", [&](std::ostringstream& detail) {
    std::mt19937_64 rng(seed);
    std::vector<double> times;
    for (int trial = 0; trial < pairs; ++trial) {
      int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_base_n));
      int max_vertices = n + 6;
      LoopedGraph g = detail::random_graph(rng, n);
      LoopedGraph scrambled = g;
      for (int step = 0; step < 3; ++step) {
        int budget = std::min(2, max_vertices - scrambled.n());
        auto moves = enumerate_moves(scrambled, budget);
        if (moves.empty()) break;
        scrambled = moves[rng() % moves.size()].second;
      }
      auto t0 = std::chrono::steady_clock::now();
      SearchResult r = equivalence_search(g, scrambled, max_vertices, 100000);
      times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      if (!r.found) {
        detail << "no path for trial " << trial << " (n=" << n << ")";
        return false;
      }
      // replay the path and land on the scrambled graph
      LoopedGraph cur = decode_canonical(canonical_form(g, max_vertices));
      for (const MoveDescriptor& m : r.path)
        cur = decode_canonical(canonical_form(apply_move(cur, m), max_vertices));
      if (canonical_form(cur, max_vertices) != canonical_form(scrambled, max_vertices)) {
        detail << "replay diverged for trial " << trial;
        return false;
      }
    }
    std::sort(times.begin(), times.end());
    double median = times.empty() ? 0.0 : times[times.size() / 2];
    if (median_seconds) *median_seconds = median;
    detail << pairs << " scrambles, median " << median << "s";
    return true;
  });
}

// Perfect discrimination at small sizes, both variants.
inline Outcome census_small() {
  return detail::timed("small census discrimination", [&](std::ostringstream& detail) {
    for (int n = 0; n <= 5; ++n)
      for (CensusVariant variant : {CensusVariant::full, CensusVariant::one_variable}) {
        CensusResult census = bracket_census(n, CensusKind::looped, variant);
        if (census.distinct != census.classes) {
          detail << "looped n=" << n << ": " << census.distinct << "/" << census.classes;
          return false;
        }
        if (n == 5 && census.classes != 544) {
          detail << "expected 544 looped classes at n=5, found " << census.classes;
          return false;
        }
      }
    for (CensusVariant variant : {CensusVariant::full, CensusVariant::one_variable}) {
      CensusResult census = bracket_census(6, CensusKind::simple, variant);
      if (census.classes != 156 || census.distinct != 156) {
        detail << "simple n=6: " << census.distinct << "/" << census.classes;
        return false;
      }
    }
    detail << "looped n<=5 (544 at n=5) and simple n=6 (156), both variants";
    return true;
  });
}

inline Outcome census_looped6(bool* mixed_connectivity_out = nullptr) {
  return detail::timed("six-vertex looped census", [&](std::ostringstream& detail) {
    CensusResult census = bracket_census(6, CensusKind::looped);
    bool mixed = false;
    for (const auto& group : census.collisions) {
      bool any_conn = false, any_disc = false;
      for (std::size_t i : group) (census.records[i].connected ? any_conn : any_disc) = true;
      if (any_conn && any_disc) mixed = true;
    }
    if (mixed_connectivity_out) *mixed_connectivity_out = mixed;
    detail << census.classes << " classes, " << census.distinct << " distinct, "
           << census.collisions.size() << " collision groups, mixed connectivity "
           << (mixed ? "present" : "absent");
    return census.classes == 5096 && census.distinct == 5027;
  });
}

inline Outcome census_simple7() {
  return detail::timed("seven-vertex simple census", [&](std::ostringstream& detail) {
    CensusResult census = bracket_census(7, CensusKind::simple);
    detail << census.classes << " classes, " << census.distinct << " distinct";
    return census.classes == 1044 && census.distinct == 1028;
  });
}

// The release gate: engine cross-check, the identity suite, move
// invariance, and the small census.
inline std::vector<Outcome> run_selftest() {
  std::vector<Outcome> results;
  results.push_back(engine_equivalence());
  results.push_back(closed_forms());
  results.push_back(identity_suite());
  results.push_back(knot_pipeline());
  results.push_back(config_table_and_words());
  results.push_back(move_invariance());
  results.push_back(census_small());
  return results;
}

}  // namespace bracketeer::selftest
