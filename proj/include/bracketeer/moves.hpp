#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bracketeer/bracket.hpp"
#include "bracketeer/errors.hpp"
#include "bracketeer/graph.hpp"
#include "bracketeer/poly.hpp"

namespace bracketeer {

enum class MoveKind { omega1, omega2, omega3 };

// A single graph Reidemeister move.
//   O1+ looped|unlooped      adjoin an isolated vertex (new index n)
//   O1- v                    remove the isolated vertex v
//   O2+ S={...} adj|nonadj loopedfirst
//                            adjoin looped v (index n) and unlooped w
//                            (index n+1), both adjacent to S
//   O2- v w                  remove the pair: v looped, w unlooped
//   O3 u v w                 toggle the three non-loop adjacencies
struct MoveDescriptor {
  MoveKind kind = MoveKind::omega1;
  bool insert = false;
  bool looped = false;        // omega1 insert
  int u = -1, v = -1, w = -1; // omega1 remove uses v; omega2 remove uses v,w
  std::uint64_t subset = 0;   // omega2 insert
  bool adjacent = false;      // omega2 insert

  std::string to_string() const {
    std::ostringstream out;
    switch (kind) {
      case MoveKind::omega1:
        if (insert)
          out << "O1+ " << (looped ? "looped" : "unlooped");
        else
          out << "O1- " << v;
        break;
      case MoveKind::omega2:
        if (insert) {
          out << "O2+ S={";
          bool first = true;
          for (int i = 0; i < 64; ++i)
            if ((subset >> i) & 1u) {
              if (!first) out << ',';
              out << i;
              first = false;
            }
          out << "} " << (adjacent ? "adj" : "nonadj") << " loopedfirst";
        } else {
          out << "O2- " << v << ' ' << w;
        }
        break;
      case MoveKind::omega3:
        out << "O3 " << u << ' ' << v << ' ' << w;
        break;
    }
    return out.str();
  }

  static MoveDescriptor parse(const std::string& text) {
    std::istringstream in(text);
    std::string head;
    if (!(in >> head)) throw input_error("move parse: empty descriptor");
    MoveDescriptor m;
    auto need_int = [&](int& slot) {
      if (!(in >> slot)) throw input_error("move parse: expected a vertex index");
    };
    if (head == "O1+") {
      m.kind = MoveKind::omega1;
      m.insert = true;
      std::string flag;
      if (!(in >> flag) || (flag != "looped" && flag != "unlooped"))
        throw input_error("move parse: O1+ needs 'looped' or 'unlooped'");
      m.looped = flag == "looped";
    } else if (head == "O1-") {
      m.kind = MoveKind::omega1;
      need_int(m.v);
    } else if (head == "O2+") {
      m.kind = MoveKind::omega2;
      m.insert = true;
      std::string set_tok, adj_tok;
      if (!(in >> set_tok) || set_tok.substr(0, 3) != "S={" || set_tok.back() != '}')
        throw input_error("move parse: O2+ needs S={...}");
      std::string inner = set_tok.substr(3, set_tok.size() - 4);
      std::istringstream items(inner);
      std::string item;
      while (std::getline(items, item, ',')) {
        if (item.empty()) throw input_error("move parse: bad subset");
        std::size_t pos = 0;
        int idx = std::stoi(item, &pos);
        if (pos != item.size() || idx < 0 || idx >= 64)
          throw input_error("move parse: bad subset element '" + item + "'");
        m.subset |= std::uint64_t{1} << idx;
      }
      if (!(in >> adj_tok) || (adj_tok != "adj" && adj_tok != "nonadj"))
        throw input_error("move parse: O2+ needs 'adj' or 'nonadj'");
      m.adjacent = adj_tok == "adj";
      std::string order;
      if (in >> order && order != "loopedfirst")
        throw input_error("move parse: unknown O2+ flag '" + order + "'");
      return m;
    } else if (head == "O2-") {
      m.kind = MoveKind::omega2;
      need_int(m.v);
      need_int(m.w);
    } else if (head == "O3") {
      m.kind = MoveKind::omega3;
      need_int(m.u);
      need_int(m.v);
      need_int(m.w);
    } else {
      throw input_error("move parse: unknown move '" + head + "'");
    }
    std::string rest;
    if (in >> rest) throw input_error("move parse: trailing tokens");
    return m;
  }
};

// ---------------------------------------------------------------------------
// The six three-vertex configurations whose non-loop toggle preserves the
// reduced bracket. Derivation and validation happen in derive_config_table.

inline LoopedGraph toggle_triangle_edges(const LoopedGraph& g, int a, int b, int c) {
  LoopedGraph out = g;
  out.toggle_edge(a, b);
  out.toggle_edge(a, c);
  out.toggle_edge(b, c);
  return out;
}

namespace detail {

inline LoopedGraph three_vertex(std::initializer_list<std::pair<int, int>> edges,
                                std::initializer_list<int> loops) {
  LoopedGraph g(3);
  for (auto [a, b] : edges) g.set_edge(a, b);
  for (int v : loops) g.set_loop(v);
  return g;
}

// Reference table, in loop-toggle-paired order: each even index i and
// i+1 swap loops. Paths are centered at vertex 0.
inline std::vector<LoopedGraph> reference_configs() {
  return {
      three_vertex({{0, 1}, {0, 2}}, {0, 1, 2}),    // path, all looped
      three_vertex({{0, 1}, {0, 2}}, {}),           // path, no loops
      three_vertex({{0, 1}, {0, 2}}, {0, 1}),       // path, center and one end looped
      three_vertex({{0, 1}, {0, 2}}, {2}),          // path, one end looped
      three_vertex({{0, 1}, {0, 2}, {1, 2}}, {1, 2}),  // triangle, two loops
      three_vertex({{0, 1}, {0, 2}, {1, 2}}, {0}),     // triangle, one loop
  };
}

// Deterministic extension family: k = 1..3 outside vertices, each
// attached to none or exactly two of the triple; for k <= 2 all loop
// flags and mutual edges of the outside vertices are swept as well.
struct Extension {
  int k = 0;
  std::vector<std::uint64_t> attach;  // per outside vertex: mask over {0,1,2}
  std::uint64_t ext_loops = 0;
  std::uint64_t ext_edges = 0;  // bits over pairs (3,4),(3,5),(4,5)
};

inline const std::vector<Extension>& extension_family() {
  static const std::vector<Extension> family = [] {
    std::vector<Extension> out;
    const std::uint64_t patterns[4] = {0b000, 0b011, 0b101, 0b110};
    for (int k = 1; k <= 2; ++k) {
      int npat = 1;
      for (int i = 0; i < k; ++i) npat *= 4;
      for (int pat = 0; pat < npat; ++pat) {
        std::vector<std::uint64_t> attach;
        int rem = pat;
        for (int i = 0; i < k; ++i) {
          attach.push_back(patterns[rem % 4]);
          rem /= 4;
        }
        int pair_bits = k * (k - 1) / 2;
        for (std::uint64_t loops = 0; loops < (std::uint64_t{1} << k); ++loops)
          for (std::uint64_t ee = 0; ee < (std::uint64_t{1} << pair_bits); ++ee)
            out.push_back({k, attach, loops, ee});
      }
    }
    for (int pat = 0; pat < 64; ++pat) {  // k = 3, bare externals
      std::vector<std::uint64_t> attach;
      int rem = pat;
      for (int i = 0; i < 3; ++i) {
        attach.push_back(patterns[rem % 4]);
        rem /= 4;
      }
      out.push_back({3, attach, 0, 0});
    }
    return out;
  }();
  return family;
}

inline LoopedGraph extend_triple(const LoopedGraph& triple, const Extension& ext) {
  LoopedGraph g = triple.add_vertices(ext.k);
  for (int i = 0; i < ext.k; ++i) {
    int x = 3 + i;
    for (int t = 0; t < 3; ++t)
      if ((ext.attach[static_cast<std::size_t>(i)] >> t) & 1u) g.set_edge(x, t);
    if ((ext.ext_loops >> i) & 1u) g.set_loop(x);
  }
  int bit = 0;
  for (int i = 0; i < ext.k; ++i)
    for (int j = i + 1; j < ext.k; ++j, ++bit)
      if ((ext.ext_edges >> bit) & 1u) g.set_edge(3 + i, 3 + j);
  return g;
}

}  // namespace detail

struct ConfigTableReport {
  std::vector<LoopedGraph> configs;             // the six survivors, table side
  std::size_t candidate_pairs = 0;              // unordered toggle pairs examined
  std::size_t surviving_pairs = 0;
  bool matches_reference = false;
};

// Discriminator oracle: sweep all 3-vertex looped-graph classes H, pair
// each with its non-loop toggle H', and keep the pair when the reduced
// bracket survives the toggle both bare and under every extension whose
// outside vertices attach to 0 or 2 of the triple. Exactly six pairs must
// survive, and they must be the reference configurations.
inline ConfigTableReport derive_config_table() {
  std::map<std::string, LoopedGraph> classes;
  for (std::uint64_t code = 0; code < 64; ++code) {
    LoopedGraph g(3);
    int bit = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if ((code >> bit++) & 1u) g.set_edge(i, j);
    for (int i = 0; i < 3; ++i)
      if ((code >> (3 + i)) & 1u) g.set_loop(i);
    classes.emplace(canonical_form(g), g);
  }

  ConfigTableReport report;
  std::set<std::string> seen_pairs;
  for (const auto& [canon, h] : classes) {
    LoopedGraph toggled = toggle_triangle_edges(h, 0, 1, 2);
    std::string toggled_canon = canonical_form(toggled);
    std::string pair_key = std::min(canon, toggled_canon) + std::max(canon, toggled_canon);
    if (!seen_pairs.insert(pair_key).second) continue;
    ++report.candidate_pairs;

    bool survives = reduce_single(state_sum_bracket(h)) ==
                    reduce_single(state_sum_bracket(toggled));
    if (survives) {
      for (const auto& ext : detail::extension_family()) {
        LoopedGraph g = detail::extend_triple(h, ext);
        LoopedGraph gp = detail::extend_triple(toggled, ext);
        if (reduce_single(state_sum_bracket(g)) != reduce_single(state_sum_bracket(gp))) {
          survives = false;
          break;
        }
      }
    }
    if (!survives) continue;
    ++report.surviving_pairs;
    // table side of the pair: the member with two or three edges
    report.configs.push_back(h.edge_count() >= 2 ? h : toggled);
  }

  std::set<std::string> got, expected;
  for (const auto& g : report.configs) got.insert(canonical_form(g));
  for (const auto& g : detail::reference_configs()) expected.insert(canonical_form(g));
  report.matches_reference = report.surviving_pairs == 6 && got == expected;
  if (report.surviving_pairs != 6)
    throw invariant_error("derive_config_table: expected 6 surviving pairs, found " +
                          std::to_string(report.surviving_pairs));
  return report;
}

// Canonical forms of the twelve legal 3-vertex subgraphs for an omega3
// toggle: the six configurations and their toggles. Derived once.
inline const std::set<std::string>& omega3_legal_forms() {
  static const std::set<std::string> forms = [] {
    ConfigTableReport report = derive_config_table();
    if (!report.matches_reference)
      throw invariant_error("omega3_legal_forms: derived table does not match the reference");
    std::set<std::string> out;
    for (const auto& g : report.configs) {
      out.insert(canonical_form(g));
      out.insert(canonical_form(toggle_triangle_edges(g, 0, 1, 2)));
    }
    return out;
  }();
  return forms;
}

// ---------------------------------------------------------------------------
// Move application and enumeration.

namespace detail {

inline void check_omega3_context(const LoopedGraph& g, int u, int v, int w) {
  if (u == v || u == w || v == w) throw input_error("omega3: vertices must be distinct");
  g.check_vertex(u);
  g.check_vertex(v);
  g.check_vertex(w);
  std::uint64_t triple = (std::uint64_t{1} << u) | (std::uint64_t{1} << v) | (std::uint64_t{1} << w);
  for (int x = 0; x < g.n(); ++x) {
    if ((triple >> x) & 1u) continue;
    int touching = std::popcount(g.neighbors(x) & triple);
    if (touching != 0 && touching != 2)
      throw input_error("omega3: an outside vertex is adjacent to " + std::to_string(touching) +
                        " of the triple, needs 0 or 2");
  }
  std::uint64_t mask = triple;
  if (!omega3_legal_forms().count(canonical_form(g.induced_subgraph(mask))))
    throw input_error("omega3: neither side of the toggle is a listed configuration");
}

}  // namespace detail

inline LoopedGraph apply_move(const LoopedGraph& g, const MoveDescriptor& m) {
  switch (m.kind) {
    case MoveKind::omega1: {
      if (m.insert) {
        LoopedGraph out = g.add_vertices(1);
        if (m.looped) out.set_loop(g.n());
        return out;
      }
      g.check_vertex(m.v);
      if (g.degree(m.v) != 0) throw input_error("omega1 remove: vertex is not isolated");
      return g.delete_vertex(m.v);
    }
    case MoveKind::omega2: {
      if (m.insert) {
        std::uint64_t all = g.n() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.n()) - 1;
        if (m.subset & ~all) throw input_error("omega2 insert: subset out of range");
        LoopedGraph out = g.add_vertices(2);
        int v = g.n(), w = g.n() + 1;
        out.set_loop(v);
        for (int x = 0; x < g.n(); ++x)
          if ((m.subset >> x) & 1u) {
            out.set_edge(v, x);
            out.set_edge(w, x);
          }
        if (m.adjacent) out.set_edge(v, w);
        return out;
      }
      g.check_vertex(m.v);
      g.check_vertex(m.w);
      if (m.v == m.w) throw input_error("omega2 remove: vertices must be distinct");
      if (!g.loop(m.v)) throw input_error("omega2 remove: first vertex must be looped");
      if (g.loop(m.w)) throw input_error("omega2 remove: second vertex must be unlooped");
      std::uint64_t bv = std::uint64_t{1} << m.v, bw = std::uint64_t{1} << m.w;
      if ((g.neighbors(m.v) & ~bw) != (g.neighbors(m.w) & ~bv))
        throw input_error("omega2 remove: outside neighborhoods differ");
      return g.delete_vertex(std::max(m.v, m.w)).delete_vertex(std::min(m.v, m.w));
    }
    case MoveKind::omega3: {
      detail::check_omega3_context(g, m.u, m.v, m.w);
      return toggle_triangle_edges(g, m.u, m.v, m.w);
    }
  }
  throw input_error("apply_move: unknown move kind");
}

// All legal moves, in a fixed order. insert_budget caps how many vertices
// insertions may add (0 disables them).
inline std::vector<std::pair<MoveDescriptor, LoopedGraph>> enumerate_moves(const LoopedGraph& g,
                                                                           int insert_budget) {
  std::vector<std::pair<MoveDescriptor, LoopedGraph>> out;
  int n = g.n();
  auto push = [&](MoveDescriptor m) { out.emplace_back(m, apply_move(g, m)); };

  if (insert_budget >= 1 && n + 1 <= LoopedGraph::max_vertices) {
    for (bool looped : {false, true}) {
      MoveDescriptor m;
      m.kind = MoveKind::omega1;
      m.insert = true;
      m.looped = looped;
      push(m);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (g.degree(v) != 0) continue;
    MoveDescriptor m;
    m.kind = MoveKind::omega1;
    m.v = v;
    push(m);
  }
  if (insert_budget >= 2 && n + 2 <= LoopedGraph::max_vertices) {
    for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << n); ++subset)
      for (bool adjacent : {false, true}) {
        MoveDescriptor m;
        m.kind = MoveKind::omega2;
        m.insert = true;
        m.subset = subset;
        m.adjacent = adjacent;
        push(m);
      }
  }
  for (int v = 0; v < n; ++v) {
    if (!g.loop(v)) continue;
    for (int w = 0; w < n; ++w) {
      if (w == v || g.loop(w)) continue;
      std::uint64_t bv = std::uint64_t{1} << v, bw = std::uint64_t{1} << w;
      if ((g.neighbors(v) & ~bw) != (g.neighbors(w) & ~bv)) continue;
      MoveDescriptor m;
      m.kind = MoveKind::omega2;
      m.v = v;
      m.w = w;
      push(m);
    }
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int w = v + 1; w < n; ++w) {
        MoveDescriptor m;
        m.kind = MoveKind::omega3;
        m.u = u;
        m.v = v;
        m.w = w;
        try {
          detail::check_omega3_context(g, u, v, w);
        } catch (const input_error&) {
          continue;
        }
        push(m);
      }
  return out;
}

// ---------------------------------------------------------------------------
// Bounded bidirectional search for a move path between two graphs.

struct SearchResult {
  bool found = false;
  // Moves are relative to canonical representatives: step i applies to
  // decode_canonical of the previous step's canonical form.
  std::vector<MoveDescriptor> path;
  std::uint64_t expansions = 0;
};

inline SearchResult equivalence_search(const LoopedGraph& g1, const LoopedGraph& g2,
                                       int max_vertices, std::uint64_t max_expansions) {
  if (max_vertices < std::max(g1.n(), g2.n()))
    throw input_error("equivalence_search: max_vertices below the endpoints");
  if (max_vertices > LoopedGraph::max_vertices)
    throw input_error("equivalence_search: max_vertices above the representation limit");
  const int canon_cap = max_vertices;

  SearchResult result;
  std::string start = canonical_form(g1, canon_cap), goal = canonical_form(g2, canon_cap);
  // visited: canon -> parent canon ("" for the roots)
  std::map<std::string, std::string> visited[2];
  std::vector<std::string> frontier[2];
  visited[0][start] = "";
  visited[1][goal] = "";
  frontier[0].push_back(start);
  frontier[1].push_back(goal);

  auto reconstruct = [&](const std::string& meet) {
    std::vector<std::string> nodes;
    for (std::string c = meet; !c.empty(); c = visited[0][c]) {
      nodes.push_back(c);
      if (c == start) break;
    }
    std::reverse(nodes.begin(), nodes.end());
    for (std::string c = visited[1][meet]; !c.empty(); c = visited[1][c]) {
      nodes.push_back(c);
      if (c == goal) break;
    }
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      LoopedGraph rep = decode_canonical(nodes[i]);
      bool matched = false;
      for (const auto& [m, h] : enumerate_moves(rep, max_vertices - rep.n())) {
        if (canonical_form(h, canon_cap) == nodes[i + 1]) {
          result.path.push_back(m);
          matched = true;
          break;
        }
      }
      if (!matched)
        throw invariant_error("equivalence_search: lost an edge during reconstruction");
    }
    result.found = true;
  };

  if (start == goal) {
    result.found = true;
    return result;
  }

  while (!frontier[0].empty() && !frontier[1].empty()) {
    int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    std::vector<std::string> next;
    std::sort(frontier[side].begin(), frontier[side].end());
    for (const std::string& c : frontier[side]) {
      if (result.expansions >= max_expansions) return result;
      ++result.expansions;
      LoopedGraph rep = decode_canonical(c);
      for (const auto& [m, h] : enumerate_moves(rep, max_vertices - rep.n())) {
        std::string hc = canonical_form(h, canon_cap);
        if (visited[side].count(hc)) continue;
        visited[side][hc] = c;
        if (visited[1 - side].count(hc)) {
          reconstruct(hc);
          return result;
        }
        next.push_back(hc);
      }
    }
    frontier[side] = std::move(next);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Double-occurrence words on three letters and their interlacement
// shapes. The eight trace words of a triangle region map onto the
// configurations; transposing letters 1-2, 3-4 and 5-6 lands on the
// toggled shape.

namespace detail {

inline LoopedGraph word_shape(const std::string& word) {
  // 3-letter double-occurrence word -> loopless interlacement graph
  std::map<char, std::pair<int, int>> pos;
  std::vector<char> order;
  for (int i = 0; i < static_cast<int>(word.size()); ++i) {
    char c = word[static_cast<std::size_t>(i)];
    if (!pos.count(c)) {
      pos[c] = {i, -1};
      order.push_back(c);
    } else {
      pos[c].second = i;
    }
  }
  LoopedGraph g(static_cast<int>(order.size()));
  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      auto [a1, a2] = pos[order[a]];
      auto [b1, b2] = pos[order[b]];
      bool in1 = a1 < b1 && b1 < a2;
      bool in2 = a1 < b2 && b2 < a2;
      if (in1 != in2) g.set_edge(static_cast<int>(a), static_cast<int>(b));
    }
  return g;
}

inline std::string transpose_pairs(std::string word) {
  for (std::size_t i = 0; i + 1 < word.size(); i += 2) std::swap(word[i], word[i + 1]);
  return word;
}

}  // namespace detail

struct WordCorrespondence {
  std::string word;
  int config_index;  // into reference_configs()
  bool primed;       // true: the word matches the toggled (primed) shape
  bool shape_ok = false;
  bool transposed_ok = false;
};

// Checks all eight words against the configuration table. Throws on any
// mismatch; returns the per-word report otherwise.
inline std::vector<WordCorrespondence> word_correspondence_check() {
  static const std::vector<std::pair<std::string, std::pair<int, bool>>> table = {
      {"ABACBC", {2, false}},  // path, center and one end looped
      {"ABACCB", {1, true}},   // path, no loops (primed)
      {"ABBCAC", {2, true}},
      {"ABBCCA", {4, true}},   // triangle, two loops (primed)
      {"ABCABC", {4, false}},
      {"ABCACB", {2, false}},
      {"ABCBAC", {1, false}},
      {"ABCBCA", {2, true}},
  };
  std::vector<LoopedGraph> configs = detail::reference_configs();
  std::vector<WordCorrespondence> report;
  for (const auto& [word, target] : table) {
    auto [index, primed] = target;
    LoopedGraph shape = configs[static_cast<std::size_t>(index)];
    // strip loops: interlacement of a bare word carries no sign data
    for (int v = 0; v < 3; ++v) shape.set_loop(v, false);
    LoopedGraph toggled = toggle_triangle_edges(shape, 0, 1, 2);
    const LoopedGraph& want = primed ? toggled : shape;
    const LoopedGraph& want_t = primed ? shape : toggled;
    WordCorrespondence entry{word, index, primed};
    entry.shape_ok = isomorphic(detail::word_shape(word), want);
    entry.transposed_ok = isomorphic(detail::word_shape(detail::transpose_pairs(word)), want_t);
    if (!entry.shape_ok || !entry.transposed_ok)
      throw invariant_error("word_correspondence_check: word " + word +
                            " does not match its configuration");
    report.push_back(entry);
  }
  return report;
}

}  // namespace bracketeer
