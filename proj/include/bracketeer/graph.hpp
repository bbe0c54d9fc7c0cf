#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bracketeer/errors.hpp"
#include "bracketeer/gf2.hpp"

namespace bracketeer {

// A simple graph together with a loop flag per vertex. The adjacency
// relation is irreflexive; loops never appear in the bit rows. This keeps
// the two surgeries honest: local complementation toggles loops, a pivot
// never does.
class LoopedGraph {
public:
  static constexpr int max_vertices = 64;

  LoopedGraph() = default;

  explicit LoopedGraph(int n) : n_(n), adj_(static_cast<std::size_t>(n), 0) {
    if (n < 0 || n > max_vertices)
      throw input_error("LoopedGraph: vertex count must be in [0,64]");
  }

  int n() const { return n_; }

  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw input_error("vertex out of range");
  }

  bool has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return (adj_[static_cast<std::size_t>(u)] >> v) & 1u;
  }

  void set_edge(int u, int v, bool present = true) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw input_error("set_edge: loops are flags, not edges");
    std::uint64_t bu = std::uint64_t{1} << u, bv = std::uint64_t{1} << v;
    if (present) {
      adj_[static_cast<std::size_t>(u)] |= bv;
      adj_[static_cast<std::size_t>(v)] |= bu;
    } else {
      adj_[static_cast<std::size_t>(u)] &= ~bv;
      adj_[static_cast<std::size_t>(v)] &= ~bu;
    }
  }

  void toggle_edge(int u, int v) { set_edge(u, v, !has_edge(u, v)); }

  bool loop(int v) const {
    check_vertex(v);
    return (loops_ >> v) & 1u;
  }

  void set_loop(int v, bool present = true) {
    check_vertex(v);
    if (present)
      loops_ |= std::uint64_t{1} << v;
    else
      loops_ &= ~(std::uint64_t{1} << v);
  }

  void toggle_loop(int v) { set_loop(v, !loop(v)); }

  std::uint64_t neighbors(int v) const {
    check_vertex(v);
    return adj_[static_cast<std::size_t>(v)];
  }

  std::uint64_t loops_mask() const { return loops_; }
  int loop_count() const { return std::popcount(loops_); }

  int degree(int v) const { return std::popcount(neighbors(v)); }

  int edge_count() const {
    int total = 0;
    for (int v = 0; v < n_; ++v) total += degree(v);
    return total / 2;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v)
        if ((adj_[static_cast<std::size_t>(u)] >> v) & 1u) out.emplace_back(u, v);
    return out;
  }

  bool operator==(const LoopedGraph&) const = default;

  // --- surgeries -----------------------------------------------------------

  // G^a: toggle every adjacency {x,y} with x, y neighbors of a, including
  // the x = y case, which toggles the loop at x. Edges at a are untouched.
  LoopedGraph local_complement(int a) const {
    check_vertex(a);
    LoopedGraph g = *this;
    std::uint64_t na = adj_[static_cast<std::size_t>(a)];
    for (int x = 0; x < n_; ++x) {
      if (!((na >> x) & 1u)) continue;
      g.adj_[static_cast<std::size_t>(x)] ^= na & ~(std::uint64_t{1} << x);
    }
    g.loops_ ^= na;
    return g;
  }

  // G^{ab}: toggle all adjacencies between the three classes
  // N(a) & N(b), N(a) \ N(b), N(b) \ N(a) (a, b excluded). No loop moves.
  LoopedGraph pivot(int a, int b) const {
    check_vertex(a);
    check_vertex(b);
    if (a == b) throw input_error("pivot: vertices must be distinct");
    LoopedGraph g = *this;
    std::uint64_t ba = std::uint64_t{1} << a, bb = std::uint64_t{1} << b;
    std::uint64_t na = adj_[static_cast<std::size_t>(a)] & ~bb;
    std::uint64_t nb = adj_[static_cast<std::size_t>(b)] & ~ba;
    std::uint64_t both = na & nb, only_a = na & ~nb, only_b = nb & ~na;
    for (int x = 0; x < n_; ++x) {
      std::uint64_t bx = std::uint64_t{1} << x;
      if (both & bx)
        g.adj_[static_cast<std::size_t>(x)] ^= only_a | only_b;
      else if (only_a & bx)
        g.adj_[static_cast<std::size_t>(x)] ^= both | only_b;
      else if (only_b & bx)
        g.adj_[static_cast<std::size_t>(x)] ^= both | only_a;
    }
    return g;
  }

  LoopedGraph delete_vertex(int v) const {
    check_vertex(v);
    LoopedGraph g(n_ - 1);
    std::uint64_t low = (std::uint64_t{1} << v) - 1;
    auto squeeze = [&](std::uint64_t bits) { return (bits & low) | ((bits >> 1) & ~low); };
    int w = 0;
    for (int i = 0; i < n_; ++i) {
      if (i == v) continue;
      g.adj_[static_cast<std::size_t>(w)] = squeeze(adj_[static_cast<std::size_t>(i)]);
      ++w;
    }
    g.loops_ = squeeze(loops_);
    return g;
  }

  // G + I: toggle every loop flag.
  LoopedGraph toggle_all_loops() const {
    LoopedGraph g = *this;
    g.loops_ = ~loops_ & (n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1);
    return g;
  }

  // Same graph with k fresh isolated vertices appended.
  LoopedGraph add_vertices(int k) const {
    if (k < 0 || n_ + k > max_vertices) throw input_error("add_vertices: bad count");
    LoopedGraph g(n_ + k);
    for (int i = 0; i < n_; ++i) g.adj_[static_cast<std::size_t>(i)] = adj_[static_cast<std::size_t>(i)];
    g.loops_ = loops_;
    return g;
  }

  LoopedGraph disjoint_union(const LoopedGraph& h) const {
    if (n_ + h.n_ > max_vertices) throw input_error("disjoint_union: too many vertices");
    LoopedGraph g(n_ + h.n_);
    for (int i = 0; i < n_; ++i) g.adj_[static_cast<std::size_t>(i)] = adj_[static_cast<std::size_t>(i)];
    for (int i = 0; i < h.n_; ++i)
      g.adj_[static_cast<std::size_t>(n_ + i)] = h.adj_[static_cast<std::size_t>(i)] << n_;
    g.loops_ = loops_ | (h.loops_ << n_);
    return g;
  }

  // Subgraph induced by the vertex set given as a bit mask; indices are
  // compacted in increasing order.
  LoopedGraph induced_subgraph(std::uint64_t mask) const {
    std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    if (mask & ~all) throw input_error("induced_subgraph: vertex set out of range");
    std::vector<int> keep;
    for (int v = 0; v < n_; ++v)
      if ((mask >> v) & 1u) keep.push_back(v);
    LoopedGraph g(static_cast<int>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) {
      for (std::size_t j = i + 1; j < keep.size(); ++j)
        if ((adj_[static_cast<std::size_t>(keep[i])] >> keep[j]) & 1u)
          g.set_edge(static_cast<int>(i), static_cast<int>(j));
      if ((loops_ >> keep[i]) & 1u) g.set_loop(static_cast<int>(i));
    }
    return g;
  }

  LoopedGraph relabel(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != n_) throw input_error("relabel: bad permutation size");
    LoopedGraph g(n_);
    for (int u = 0; u < n_; ++u) {
      for (int v = u + 1; v < n_; ++v)
        if ((adj_[static_cast<std::size_t>(u)] >> v) & 1u)
          g.set_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
      if ((loops_ >> u) & 1u) g.set_loop(perm[static_cast<std::size_t>(u)]);
    }
    return g;
  }

  // Connected components as vertex masks, ordered by least vertex.
  std::vector<std::uint64_t> components() const {
    std::vector<std::uint64_t> out;
    std::uint64_t seen = 0;
    for (int v = 0; v < n_; ++v) {
      if ((seen >> v) & 1u) continue;
      std::uint64_t comp = std::uint64_t{1} << v, frontier = comp;
      while (frontier) {
        std::uint64_t next = 0;
        std::uint64_t f = frontier;
        while (f) {
          int u = std::countr_zero(f);
          f &= f - 1;
          next |= adj_[static_cast<std::size_t>(u)];
        }
        frontier = next & ~comp;
        comp |= next;
      }
      seen |= comp;
      out.push_back(comp);
    }
    return out;
  }

  bool is_connected() const { return n_ <= 1 || components().size() == 1; }

private:
  int n_ = 0;
  std::vector<std::uint64_t> adj_;
  std::uint64_t loops_ = 0;
};

// A(G) + Delta over GF(2): off-diagonal entries are the adjacency
// relation, diagonal entry i is loop(i) XOR bit i of the mask.
inline Gf2Matrix adjacency_with_mask(const LoopedGraph& g, std::uint64_t delta) {
  int n = g.n();
  std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  if (delta & ~all) throw input_error("adjacency_with_mask: mask wider than the graph");
  Gf2Matrix m(n);
  std::uint64_t diag = g.loops_mask() ^ delta;
  for (int i = 0; i < n; ++i)
    m.xor_row(i, g.neighbors(i) | ((diag >> i & 1u) << i));
  return m;
}

// --- graph families --------------------------------------------------------

enum class Family { edgeless, complete, path, lollipop, complete_looped };

inline LoopedGraph make_family(Family kind, int n) {
  if (n < 0) throw input_error("make_family: negative size");
  LoopedGraph g(n);
  switch (kind) {
    case Family::edgeless:
      break;
    case Family::complete:
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.set_edge(u, v);
      break;
    case Family::path:
      for (int v = 0; v + 1 < n; ++v) g.set_edge(v, v + 1);
      break;
    case Family::lollipop:
      if (n < 1) throw input_error("make_family: lollipop needs n >= 1");
      for (int v = 0; v + 1 < n; ++v) g.set_edge(v, v + 1);
      g.set_loop(0);
      break;
    case Family::complete_looped:
      for (int u = 0; u < n; ++u) {
        g.set_loop(u);
        for (int v = u + 1; v < n; ++v) g.set_edge(u, v);
      }
      break;
  }
  return g;
}

// --- text format -----------------------------------------------------------
//
//   lg <n>
//   e <u> <v>        (u != v, 0-based)
//   l <v>
//
// '#' starts a comment; lines may appear in any order after the header.

inline LoopedGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_header = false;
  LoopedGraph g;
  auto fail = [&](const std::string& msg) -> void {
    throw input_error("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (!have_header) {
      if (tok != "lg") fail("expected header 'lg <n>'");
      long n;
      if (!(ls >> n)) fail("expected vertex count after 'lg'");
      if (n < 0 || n > LoopedGraph::max_vertices) fail("vertex count out of range");
      std::string rest;
      if (ls >> rest) fail("trailing tokens after header");
      g = LoopedGraph(static_cast<int>(n));
      have_header = true;
      continue;
    }
    if (tok == "e") {
      long u, v;
      if (!(ls >> u >> v)) fail("expected 'e <u> <v>'");
      if (u < 0 || u >= g.n() || v < 0 || v >= g.n()) fail("vertex out of range");
      if (u == v) fail("an edge needs two distinct endpoints; use 'l' for loops");
      if (g.has_edge(static_cast<int>(u), static_cast<int>(v))) fail("duplicate edge");
      g.set_edge(static_cast<int>(u), static_cast<int>(v));
    } else if (tok == "l") {
      long v;
      if (!(ls >> v)) fail("expected 'l <v>'");
      if (v < 0 || v >= g.n()) fail("vertex out of range");
      if (g.loop(static_cast<int>(v))) fail("duplicate loop");
      g.set_loop(static_cast<int>(v));
    } else {
      fail("unknown directive '" + tok + "'");
    }
    std::string rest;
    if (ls >> rest) fail("trailing tokens");
  }
  if (!have_header) throw input_error("line " + std::to_string(lineno) + ": missing 'lg <n>' header");
  return g;
}

inline std::string print_graph(const LoopedGraph& g) {
  std::ostringstream out;
  out << "lg " << g.n() << '\n';
  for (const auto& [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
  for (int v = 0; v < g.n(); ++v)
    if (g.loop(v)) out << "l " << v << '\n';
  return out.str();
}

// --- canonical form --------------------------------------------------------

namespace detail {

// Iterated color refinement. Initial colors come from (loop, degree);
// each round appends the sorted multiset of neighbor colors. Color ids
// are assigned by sorting the keys, so they depend only on the
// isomorphism class.
inline std::vector<int> refine_colors(const LoopedGraph& g) {
  int n = g.n();
  std::vector<std::vector<int>> keys(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) keys[static_cast<std::size_t>(v)] = {g.loop(v) ? 1 : 0, g.degree(v)};
  std::vector<int> color(static_cast<std::size_t>(n), 0);
  for (;;) {
    std::vector<std::vector<int>> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> next(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
      next[static_cast<std::size_t>(v)] = static_cast<int>(
          std::lower_bound(sorted.begin(), sorted.end(), keys[static_cast<std::size_t>(v)]) -
          sorted.begin());
    if (next == color) break;
    color = next;
    for (int v = 0; v < n; ++v) {
      std::vector<int>& k = keys[static_cast<std::size_t>(v)];
      k.assign(1, color[static_cast<std::size_t>(v)]);
      std::vector<int> nb;
      std::uint64_t mask = g.neighbors(v);
      while (mask) {
        int u = std::countr_zero(mask);
        mask &= mask - 1;
        nb.push_back(color[static_cast<std::size_t>(u)]);
      }
      std::sort(nb.begin(), nb.end());
      k.insert(k.end(), nb.begin(), nb.end());
    }
  }
  return color;
}

struct CanonSearch {
  const LoopedGraph& g;
  int n;
  std::vector<int> color;
  std::vector<int> color_at_pos;
  std::vector<int> twin_root;
  std::vector<int> placed;
  std::vector<bool> used;
  std::vector<std::uint64_t> best;
  int best_len = 0;

  explicit CanonSearch(const LoopedGraph& graph) : g(graph), n(graph.n()) {
    color = refine_colors(g);
    color_at_pos.assign(color.begin(), color.end());
    std::sort(color_at_pos.begin(), color_at_pos.end());
    twin_root.resize(static_cast<std::size_t>(n));
    std::iota(twin_root.begin(), twin_root.end(), 0);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        if (g.loop(u) != g.loop(v)) continue;
        std::uint64_t bu = std::uint64_t{1} << u, bv = std::uint64_t{1} << v;
        if ((g.neighbors(u) & ~bv) == (g.neighbors(v) & ~bu)) merge(u, v);
      }
    placed.assign(static_cast<std::size_t>(n), -1);
    used.assign(static_cast<std::size_t>(n), false);
    best.assign(static_cast<std::size_t>(n), 0);
  }

  int find(int v) {
    while (twin_root[static_cast<std::size_t>(v)] != v) {
      twin_root[static_cast<std::size_t>(v)] =
          twin_root[static_cast<std::size_t>(twin_root[static_cast<std::size_t>(v)])];
      v = twin_root[static_cast<std::size_t>(v)];
    }
    return v;
  }

  void merge(int u, int v) {
    u = find(u);
    v = find(v);
    if (u != v) twin_root[static_cast<std::size_t>(std::max(u, v))] = std::min(u, v);
  }

  std::uint64_t row_code(int v, int depth) {
    std::uint64_t code = 0;
    std::uint64_t nb = g.neighbors(v);
    for (int j = 0; j < depth; ++j)
      code |= ((nb >> placed[static_cast<std::size_t>(j)]) & 1u) << j;
    if (g.loop(v)) code |= std::uint64_t{1} << depth;
    return code;
  }

  void dfs(int depth) {
    if (depth == n) {
      best_len = n;
      return;
    }
    // candidates: unplaced vertices of the color this position demands,
    // one representative per twin class, tried in row-code order
    std::vector<std::pair<std::uint64_t, int>> cands;
    std::uint64_t seen_roots = 0;
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)] || color[static_cast<std::size_t>(v)] != color_at_pos[static_cast<std::size_t>(depth)])
        continue;
      int root = find(v);
      if ((seen_roots >> root) & 1u) continue;
      seen_roots |= std::uint64_t{1} << root;
      cands.emplace_back(row_code(v, depth), v);
    }
    std::sort(cands.begin(), cands.end());
    for (const auto& [code, v] : cands) {
      if (best_len > depth) {
        if (code > best[static_cast<std::size_t>(depth)]) break;  // sorted: the rest are larger too
        if (code < best[static_cast<std::size_t>(depth)]) best_len = depth;
      }
      if (best_len == depth) {
        best[static_cast<std::size_t>(depth)] = code;
        best_len = depth + 1;
      }
      placed[static_cast<std::size_t>(depth)] = v;
      used[static_cast<std::size_t>(v)] = true;
      dfs(depth + 1);
      used[static_cast<std::size_t>(v)] = false;
    }
  }
};

}  // namespace detail

// Canonical byte string: equal strings exactly when the looped graphs are
// isomorphic. Encodes n and the row-by-row lower triangle (diagonal bit =
// loop flag) of the minimizing vertex order, so it can be decoded back
// into a representative graph.
inline std::string canonical_form(const LoopedGraph& g, int cap = 10) {
  int n = g.n();
  if (n > cap) throw input_error("canonical_form: size cap exceeded");
  std::string out;
  out.push_back(static_cast<char>(n));
  if (n == 0) return out;
  detail::CanonSearch search(g);
  search.dfs(0);
  int bits = 0, acc = 0;
  for (int i = 0; i < n; ++i) {
    std::uint64_t code = search.best[static_cast<std::size_t>(i)];
    for (int j = 0; j <= i; ++j) {
      acc |= static_cast<int>((code >> j) & 1u) << bits;
      if (++bits == 8) {
        out.push_back(static_cast<char>(acc));
        bits = 0;
        acc = 0;
      }
    }
  }
  if (bits) out.push_back(static_cast<char>(acc));
  return out;
}

inline LoopedGraph decode_canonical(const std::string& bytes) {
  if (bytes.empty()) throw input_error("decode_canonical: empty input");
  int n = static_cast<unsigned char>(bytes[0]);
  LoopedGraph g(n);
  std::size_t bit = 0;
  auto next_bit = [&]() {
    std::size_t idx = 1 + bit / 8;
    if (idx >= bytes.size()) throw input_error("decode_canonical: truncated input");
    bool b = (static_cast<unsigned char>(bytes[idx]) >> (bit % 8)) & 1u;
    ++bit;
    return b;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      bool b = next_bit();
      if (!b) continue;
      if (j == i)
        g.set_loop(i);
      else
        g.set_edge(i, j);
    }
  return g;
}

inline bool isomorphic(const LoopedGraph& a, const LoopedGraph& b, int cap = 12) {
  if (a.n() != b.n()) return false;
  return canonical_form(a, cap) == canonical_form(b, cap);
}

}  // namespace bracketeer
