#pragma once

#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bracketeer/bracket.hpp"
#include "bracketeer/errors.hpp"
#include "bracketeer/graph.hpp"
#include "bracketeer/poly.hpp"

namespace bracketeer {

// A signed double-occurrence word: every crossing label appears exactly
// twice along the curve and carries one sign.
struct GaussCode {
  std::vector<std::string> labels;  // crossing id -> label, by first occurrence
  std::vector<int> word;            // 2n crossing ids in trace order
  std::vector<int> signs;           // +1 / -1 per crossing

  int crossings() const { return static_cast<int>(labels.size()); }

  int writhe() const {
    int w = 0;
    for (int s : signs) w += s;
    return w;
  }
};

// Token grammar: [O|U]<label><sign> with label alphanumeric and sign '+'
// or '-'. A leading 'O'/'U' is always read as an over/under marker. The
// sign may be omitted on one of a label's two passages.
inline GaussCode parse_gauss(const std::string& text) {
  std::istringstream in(text);
  std::string token;
  GaussCode code;
  std::map<std::string, int> index;
  std::vector<int> occurrences, sign_sum, over_marks, under_marks, decorated;
  std::vector<bool> has_sign;
  while (in >> token) {
    std::string t = token;
    int over = 0, under = 0;
    if (!t.empty() && (t[0] == 'O' || t[0] == 'U')) {
      (t[0] == 'O' ? over : under) = 1;
      t.erase(0, 1);
    }
    int sign = 0;
    if (!t.empty() && (t.back() == '+' || t.back() == '-')) {
      sign = t.back() == '+' ? 1 : -1;
      t.pop_back();
    }
    if (t.empty())
      throw input_error("gauss parse: token '" + token + "' has no label");
    for (char c : t)
      if (!std::isalnum(static_cast<unsigned char>(c)))
        throw input_error("gauss parse: malformed token '" + token + "'");
    auto [it, fresh] = index.emplace(t, static_cast<int>(code.labels.size()));
    if (fresh) {
      code.labels.push_back(t);
      occurrences.push_back(0);
      sign_sum.push_back(0);
      over_marks.push_back(0);
      under_marks.push_back(0);
      decorated.push_back(0);
      has_sign.push_back(false);
    }
    int id = it->second;
    ++occurrences[static_cast<std::size_t>(id)];
    over_marks[static_cast<std::size_t>(id)] += over;
    under_marks[static_cast<std::size_t>(id)] += under;
    decorated[static_cast<std::size_t>(id)] += over + under;
    if (sign != 0) {
      if (has_sign[static_cast<std::size_t>(id)] &&
          sign_sum[static_cast<std::size_t>(id)] != sign)
        throw input_error("gauss parse: conflicting signs on crossing '" + t + "'");
      has_sign[static_cast<std::size_t>(id)] = true;
      sign_sum[static_cast<std::size_t>(id)] = sign;
    }
    code.word.push_back(id);
  }
  for (int id = 0; id < code.crossings(); ++id) {
    const std::string& label = code.labels[static_cast<std::size_t>(id)];
    if (occurrences[static_cast<std::size_t>(id)] != 2)
      throw input_error("gauss parse: crossing '" + label + "' appears " +
                        std::to_string(occurrences[static_cast<std::size_t>(id)]) +
                        " times, expected 2");
    if (!has_sign[static_cast<std::size_t>(id)])
      throw input_error("gauss parse: crossing '" + label + "' has no sign on either passage");
    if (decorated[static_cast<std::size_t>(id)] != 0 &&
        (over_marks[static_cast<std::size_t>(id)] != 1 ||
         under_marks[static_cast<std::size_t>(id)] != 1))
      throw input_error("gauss parse: crossing '" + label +
                        "' needs exactly one over and one under passage");
    code.signs.push_back(sign_sum[static_cast<std::size_t>(id)]);
  }
  return code;
}

// Vertex per crossing; two crossings are adjacent when their occurrences
// alternate along the curve, i.e. exactly one occurrence of one lies
// between the two occurrences of the other. Loops mark negative
// crossings. The relation is symmetric and does not depend on the trace
// direction or starting point.
inline LoopedGraph interlacement_graph(const GaussCode& code) {
  int n = code.crossings();
  if (n > LoopedGraph::max_vertices)
    throw input_error("interlacement_graph: too many crossings");
  std::vector<std::pair<int, int>> position(static_cast<std::size_t>(n), {-1, -1});
  for (int p = 0; p < static_cast<int>(code.word.size()); ++p) {
    int id = code.word[static_cast<std::size_t>(p)];
    if (position[static_cast<std::size_t>(id)].first < 0)
      position[static_cast<std::size_t>(id)].first = p;
    else
      position[static_cast<std::size_t>(id)].second = p;
  }
  LoopedGraph g(n);
  for (int a = 0; a < n; ++a) {
    auto [a1, a2] = position[static_cast<std::size_t>(a)];
    for (int b = a + 1; b < n; ++b) {
      auto [b1, b2] = position[static_cast<std::size_t>(b)];
      bool in1 = a1 < b1 && b1 < a2;
      bool in2 = a1 < b2 && b2 < a2;
      if (in1 != in2) g.set_edge(a, b);
    }
    if (code.signs[static_cast<std::size_t>(a)] < 0) g.set_loop(a);
  }
  return g;
}

struct KnotInvariants {
  LoopedGraph graph;
  int writhe = 0;
  MultiPoly bracket;
  OnePoly reduced;
  QuarterPoly jones;
};

// Bracket and Jones polynomial of the knot through its looped
// interlacement graph. The Jones polynomial is computed twice, through
// the reduced bracket and through the writhe normalization of the raw
// bracket; a mismatch means an engine bug.
inline KnotInvariants knot_invariants(const GaussCode& code, int state_sum_cap = 20) {
  KnotInvariants inv;
  inv.graph = interlacement_graph(code);
  inv.writhe = code.writhe();
  inv.bracket = bracket_auto(inv.graph, state_sum_cap);
  inv.reduced = reduce_single(inv.bracket);
  int n = inv.graph.n(), loops = inv.graph.loop_count();
  inv.jones = to_jones(inv.reduced, n, loops);
  if (inv.jones != jones_from_normalization(inv.bracket, n, loops))
    throw invariant_error("knot_invariants: the two Jones routes disagree");
  return inv;
}

// Every vertex has even non-loop degree. Necessary for the graph to be
// the interlacement graph of a classical (non-virtual) diagram.
inline bool eulerian_check(const LoopedGraph& g) {
  for (int v = 0; v < g.n(); ++v)
    if (g.degree(v) % 2 != 0) return false;
  return true;
}

}  // namespace bracketeer
