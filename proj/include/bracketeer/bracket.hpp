#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <list>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bracketeer/errors.hpp"
#include "bracketeer/gf2.hpp"
#include "bracketeer/graph.hpp"
#include "bracketeer/parallel.hpp"
#include "bracketeer/poly.hpp"

namespace bracketeer {

enum class Engine { state_sum, recursive };

struct BracketStats {
  std::uint64_t nodes = 0;      // masks evaluated / recursion calls
  std::uint64_t memo_hits = 0;  // recursive engine only
  std::size_t terms = 0;        // terms in the final polynomial
};

struct BracketResult {
  MultiPoly poly;
  Engine engine = Engine::state_sum;
  BracketStats stats;
};

// ---------------------------------------------------------------------------
// State-sum engine: one summand A^(n-|D|) B^|D| d^(n-rank(A(G)+D)) per
// diagonal mask D. Masks are processed in word-parallel chunks; the merge
// is an integer matrix sum, so output does not depend on the thread count.

inline BracketResult state_sum_bracket_result(const LoopedGraph& g, int cap = 20) {
  int n = g.n();
  if (cap < 0 || cap > 30) throw input_error("state_sum_bracket: cap must be in [0,30]");
  if (n > cap) throw input_error("state_sum_bracket: graph larger than the state-sum cap");

  std::vector<std::uint64_t> base(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    base[static_cast<std::size_t>(i)] =
        g.neighbors(i) | ((g.loops_mask() >> i & 1u) << i);

  std::size_t total = std::size_t{1} << n;
  int workers = total >= 4096 ? thread_count() : 1;
  std::size_t nchunks = std::min<std::size_t>(static_cast<std::size_t>(workers), total);
  // counts[chunk][popcount][nullity]
  std::vector<std::vector<std::uint64_t>> counts(
      nchunks, std::vector<std::uint64_t>(static_cast<std::size_t>((n + 1) * (n + 1)), 0));

  parallel_chunks(
      total,
      [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        std::vector<std::uint64_t> rows(static_cast<std::size_t>(n));
        auto& local = counts[chunk];
        for (std::size_t mask = begin; mask < end; ++mask) {
          for (int i = 0; i < n; ++i)
            rows[static_cast<std::size_t>(i)] =
                base[static_cast<std::size_t>(i)] ^ ((mask >> i & 1u) << i);
          int rank = gf2_rank(rows.data(), n);
          int s = std::popcount(mask);
          ++local[static_cast<std::size_t>(s * (n + 1) + (n - rank))];
        }
      },
      workers);

  BracketResult result;
  result.engine = Engine::state_sum;
  result.stats.nodes = total;
  for (int s = 0; s <= n; ++s)
    for (int nu = 0; nu <= n; ++nu) {
      std::uint64_t c = 0;
      for (std::size_t chunk = 0; chunk < nchunks; ++chunk)
        c += counts[chunk][static_cast<std::size_t>(s * (n + 1) + nu)];
      if (c == 0) continue;
      Monomial m;
      m.exp(Var::A) = n - s;
      m.exp(Var::B) = s;
      m.exp(Var::d) = nu;
      result.poly.add_term(m, Coeff(static_cast<unsigned long>(c)));
    }
  result.stats.terms = result.poly.term_count();
  return result;
}

inline MultiPoly state_sum_bracket(const LoopedGraph& g, int cap = 20) {
  return state_sum_bracket_result(g, cap).poly;
}

// ---------------------------------------------------------------------------
// Recursive engine.
//
// Splits into connected components (the bracket is multiplicative over
// disjoint unions), peels isolated vertices as (Ad+B) / (A+Bd) factors,
// and otherwise applies, in order:
//   - an edge {a,b} with both ends loopless:
//       [G] = A^2 [G^{ab}-a-b] + AB [(G^{ab})^a-a-b] + B [G^a-a]
//   - a loop at a:
//       [G] = A^-1 B [G - loop(a)] + (A - A^-1 B^2) [G^a-a]
//   - no edges at all: [E_n] = (Ad+B)^n.
// Pivot pair: lexicographically smallest loopless adjacent (a,b); loop
// vertex: smallest index. Subresults are memoized by canonical form with
// LRU eviction.

class RecursiveBracket {
public:
  explicit RecursiveBracket(std::size_t memo_cap = std::size_t{1} << 20, int canon_cap = 12)
      : memo_cap_(memo_cap), canon_cap_(canon_cap) {
    if (memo_cap_ == 0) memo_cap_ = 1;
  }

  BracketResult compute(const LoopedGraph& g) {
    BracketResult result;
    result.engine = Engine::recursive;
    result.poly = eval(g, result.stats);
    result.stats.terms = result.poly.term_count();
    return result;
  }

  MultiPoly operator()(const LoopedGraph& g) { return compute(g).poly; }

private:
  MultiPoly eval(const LoopedGraph& g, BracketStats& st) {
    ++st.nodes;
    int n = g.n();
    if (n == 0) return MultiPoly::one();

    auto comps = g.components();
    if (comps.size() > 1) {
      MultiPoly product = MultiPoly::one();
      for (std::uint64_t mask : comps) product *= eval(g.induced_subgraph(mask), st);
      return product;
    }

    if (n == 1) return g.loop(0) ? looped_vertex_factor() : isolated_vertex_factor();

    std::string key;
    if (n <= canon_cap_) {
      key = canonical_form(g, canon_cap_);
      if (auto it = memo_.find(key); it != memo_.end()) {
        ++st.memo_hits;
        lru_.splice(lru_.begin(), lru_, it->second.second);
        return it->second.first;
      }
    }

    MultiPoly value;
    auto pair = first_loopless_adjacent_pair(g);
    if (pair.first >= 0) {
      int a = pair.first, b = pair.second;
      LoopedGraph piv = g.pivot(a, b);
      LoopedGraph g1 = piv.delete_vertex(b).delete_vertex(a);
      LoopedGraph g2 = piv.local_complement(a).delete_vertex(b).delete_vertex(a);
      LoopedGraph g3 = g.local_complement(a).delete_vertex(a);
      value = MultiPoly::variable(Var::A, 2) * eval(g1, st);
      Monomial ab;
      ab.exp(Var::A) = 1;
      ab.exp(Var::B) = 1;
      value += MultiPoly::term(ab, 1) * eval(g2, st);
      value += MultiPoly::variable(Var::B, 1) * eval(g3, st);
    } else if (g.loops_mask() != 0) {
      int a = std::countr_zero(g.loops_mask());
      LoopedGraph unlooped = g;
      unlooped.set_loop(a, false);
      LoopedGraph reduced = g.local_complement(a).delete_vertex(a);
      Monomial inv_ab;
      inv_ab.exp(Var::A) = -1;
      inv_ab.exp(Var::B) = 1;
      value = MultiPoly::term(inv_ab, 1) * eval(unlooped, st);
      MultiPoly coeff = MultiPoly::variable(Var::A, 1);  // A - A^-1 B^2
      Monomial inv_ab2;
      inv_ab2.exp(Var::A) = -1;
      inv_ab2.exp(Var::B) = 2;
      coeff.add_term(inv_ab2, -1);
      value += coeff * eval(reduced, st);
    } else {
      value = isolated_vertex_factor().pow(n);
    }

    if (!key.empty()) store(key, value);
    return value;
  }

  static std::pair<int, int> first_loopless_adjacent_pair(const LoopedGraph& g) {
    for (int a = 0; a + 1 < g.n(); ++a) {
      if (g.loop(a)) continue;
      std::uint64_t nb = g.neighbors(a) & ~g.loops_mask();
      nb &= ~std::uint64_t{0} << (a + 1);  // b > a
      if (nb) return {a, std::countr_zero(nb)};
    }
    return {-1, -1};
  }

  static MultiPoly isolated_vertex_factor() {  // Ad + B
    MultiPoly p = MultiPoly::variable(Var::B, 1);
    Monomial ad;
    ad.exp(Var::A) = 1;
    ad.exp(Var::d) = 1;
    p.add_term(ad, 1);
    return p;
  }

  static MultiPoly looped_vertex_factor() {  // A + Bd
    MultiPoly p = MultiPoly::variable(Var::A, 1);
    Monomial bd;
    bd.exp(Var::B) = 1;
    bd.exp(Var::d) = 1;
    p.add_term(bd, 1);
    return p;
  }

  void store(const std::string& key, const MultiPoly& value) {
    lru_.push_front(key);
    memo_[key] = {value, lru_.begin()};
    while (memo_.size() > memo_cap_) {
      memo_.erase(lru_.back());
      lru_.pop_back();
    }
  }

  std::size_t memo_cap_;
  int canon_cap_;
  std::unordered_map<std::string, std::pair<MultiPoly, std::list<std::string>::iterator>> memo_;
  std::list<std::string> lru_;
};

inline MultiPoly recursive_bracket(const LoopedGraph& g) {
  RecursiveBracket engine;
  return engine(g);
}

// Engine choice used by the wrappers: the state sum wins for small n, the
// memoized recursion takes over beyond it.
inline MultiPoly bracket_auto(const LoopedGraph& g, int state_sum_cap = 20) {
  if (g.n() <= std::min(state_sum_cap, 14)) return state_sum_bracket(g, state_sum_cap);
  return recursive_bracket(g);
}

inline OnePoly reduced_bracket(const LoopedGraph& g) { return reduce_single(bracket_auto(g)); }

inline QuarterPoly jones(const LoopedGraph& g) {
  return to_jones(reduced_bracket(g), g.n(), g.loop_count());
}

// The knot-style normalization route to the same Jones polynomial:
// multiply by (-A^3)^loops (-B^3)^(n-loops), then A -> t^(-1/4),
// B -> t^(1/4), d -> -t^(-1/2) - t^(1/2). Kept separate from
// reduce_single/to_jones so the two paths can check each other.
inline QuarterPoly jones_from_normalization(const MultiPoly& p, int n, int loops) {
  int top = std::max(0, p.max_exp(Var::d));
  QuarterPoly dval;
  dval.add_term(2, -1);
  dval.add_term(-2, -1);
  std::vector<QuarterPoly> dpow;
  dpow.reserve(static_cast<std::size_t>(top) + 1);
  dpow.push_back(QuarterPoly::constant(1));
  for (int i = 1; i <= top; ++i) dpow.push_back(dpow.back() * dval);
  QuarterPoly r;
  bool negate = (n & 1) != 0;
  for (const auto& [m, c] : p.terms()) {
    if (m.exp(Var::d) < 0) throw input_error("jones_from_normalization: negative d exponent");
    int quarters = -(m.exp(Var::A) + 3 * loops) + (m.exp(Var::B) + 3 * (n - loops));
    for (const auto& [q, cc] : dpow[static_cast<std::size_t>(m.exp(Var::d))].terms())
      r.add_term(q + quarters, negate ? Coeff(-(cc * c)) : Coeff(cc * c));
  }
  return r;
}

// [G](A, 1, A): the one-variable simplification.
inline OnePoly one_variable_bracket(const MultiPoly& p) {
  OnePoly r;
  for (const auto& [m, c] : p.terms()) r.add_term(m.exp(Var::A) + m.exp(Var::d), c);
  return r;
}

// ---------------------------------------------------------------------------
// Two-variable interlace polynomial:
//   q(G) = sum over S of (x-1)^rank(A(G[S])) (y-1)^nullity(A(G[S])).

inline MultiPoly interlace_q(const LoopedGraph& g, int cap = 16) {
  int n = g.n();
  if (n > cap) throw input_error("interlace_q: graph larger than the subset-sum cap");
  std::vector<std::uint64_t> base(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    base[static_cast<std::size_t>(i)] =
        g.neighbors(i) | ((g.loops_mask() >> i & 1u) << i);
  // counts[rank][nullity]
  std::vector<std::uint64_t> counts(static_cast<std::size_t>((n + 1) * (n + 1)), 0);
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    int k = 0;
    std::uint64_t m = mask;
    while (m) {
      int v = std::countr_zero(m);
      m &= m - 1;
      rows[static_cast<std::size_t>(k++)] = base[static_cast<std::size_t>(v)] & mask;
    }
    int size = k;
    int rank = gf2_rank(rows.data(), size);
    ++counts[static_cast<std::size_t>(rank * (n + 1) + (size - rank))];
  }
  MultiPoly xm1 = MultiPoly::variable(Var::x, 1) - MultiPoly::one();
  MultiPoly ym1 = MultiPoly::variable(Var::y, 1) - MultiPoly::one();
  std::vector<MultiPoly> xp{MultiPoly::one()}, yp{MultiPoly::one()};
  for (int i = 1; i <= n; ++i) {
    xp.push_back(xp.back() * xm1);
    yp.push_back(yp.back() * ym1);
  }
  MultiPoly r;
  for (int rank = 0; rank <= n; ++rank)
    for (int nu = 0; nu + rank <= n; ++nu) {
      std::uint64_t c = counts[static_cast<std::size_t>(rank * (n + 1) + nu)];
      if (c == 0) continue;
      r += (xp[static_cast<std::size_t>(rank)] * yp[static_cast<std::size_t>(nu)]) *
           Coeff(static_cast<unsigned long>(c));
    }
  return r;
}

// ---------------------------------------------------------------------------
// Universality: [G] = sum c_i [E_i] with c_i polynomials in A, A^-1, B.
// Extracted triangularly from the top d-degree down; the reconstruction
// must consume the whole polynomial.

inline std::vector<MultiPoly> universal_coefficients(const MultiPoly& p, int n) {
  if (n < 0) throw input_error("universal_coefficients: negative vertex count");
  MultiPoly edgeless = MultiPoly::variable(Var::B, 1);
  {
    Monomial ad;
    ad.exp(Var::A) = 1;
    ad.exp(Var::d) = 1;
    edgeless.add_term(ad, 1);
  }
  std::vector<MultiPoly> powers{MultiPoly::one()};
  for (int i = 1; i <= n; ++i) powers.push_back(powers.back() * edgeless);
  std::vector<MultiPoly> c(static_cast<std::size_t>(n) + 1);
  MultiPoly rest = p;
  for (int i = n; i >= 0; --i) {
    MultiPoly ci = rest.coefficient_of(Var::d, i) * MultiPoly::variable(Var::A, -i);
    c[static_cast<std::size_t>(i)] = ci;
    rest -= ci * powers[static_cast<std::size_t>(i)];
  }
  if (!rest.is_zero())
    throw invariant_error("universal_coefficients: reconstruction mismatch");
  return c;
}

// ---------------------------------------------------------------------------
// Closed forms.

inline MultiPoly closed_form_complete(int n) {
  if (n < 0) throw input_error("closed_form_complete: negative size");
  MultiPoly a_plus_bd = MultiPoly::variable(Var::A, 1);
  {
    Monomial bd;
    bd.exp(Var::B) = 1;
    bd.exp(Var::d) = 1;
    a_plus_bd.add_term(bd, 1);
  }
  MultiPoly head = (a_plus_bd.pow(n) - MultiPoly::variable(Var::A, n)).divide_by_d();
  Monomial tail;
  tail.exp(Var::A) = n;
  if (n % 2 == 1) tail.exp(Var::d) = 1;
  head.add_term(tail, 1);
  return head;
}

inline std::vector<MultiPoly> path_brackets_by_recurrence(int n) {
  if (n < 0) throw input_error("path_brackets_by_recurrence: negative size");
  std::vector<MultiPoly> p;
  for (int k = 0; k <= std::min(n, 3); ++k)
    p.push_back(state_sum_bracket(make_family(Family::path, k)));
  if (n <= 3) return p;
  Monomial m;
  m.exp(Var::A) = -1;
  m.exp(Var::B) = 2;
  MultiPoly c1 = MultiPoly::term(m, 1);  // A^-1 B^2
  MultiPoly a = MultiPoly::variable(Var::A, 1), b = MultiPoly::variable(Var::B, 1);
  MultiPoly c2 = (a + b) * (a * Coeff(2) - b);  // (A+B)(2A-B)
  Monomial inv2;
  inv2.exp(Var::A) = -1;
  inv2.exp(Var::B) = 2;
  MultiPoly lam = a - MultiPoly::term(inv2, 1);             // A - A^-1 B^2
  MultiPoly c4 = (a * a + a * b) * lam * lam;                // (A^2+AB)(A-A^-1B^2)^2
  for (int k = 4; k <= n; ++k)
    p.push_back(c1 * p[static_cast<std::size_t>(k - 1)] +
                c2 * p[static_cast<std::size_t>(k - 2)] -
                c4 * p[static_cast<std::size_t>(k - 4)]);
  return p;
}

inline MultiPoly closed_form_path_recurrence(int n) {
  return path_brackets_by_recurrence(n).back();
}

// The radical-free display: 3*2^n [P_n] expands over integers, so the
// whole right-hand side is assembled at that scale and divided out.
inline MultiPoly closed_form_path_sum(int n) {
  if (n < 0) throw input_error("closed_form_path_sum: negative size");
  MultiPoly a = MultiPoly::variable(Var::A, 1), b = MultiPoly::variable(Var::B, 1);
  MultiPoly d = MultiPoly::variable(Var::d, 1);
  MultiPoly disc = a * a * Coeff(4) - b * b * Coeff(3);  // 4A^2 - 3B^2
  MultiPoly d_minus_1 = d - MultiPoly::one();
  Coeff two_n = Coeff(1) << n;

  MultiPoly total = (d + MultiPoly::constant(2)) * (a + b).pow(n) * two_n;
  if (n % 2 == 0) total -= d_minus_1 * disc.pow(n / 2);

  MultiPoly sum3, sum4;
  for (int j = 0; 2 * j + 1 <= n; ++j) {
    Coeff odd, even;
    mpz_bin_uiui(odd.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(2 * j + 1));
    mpz_bin_uiui(even.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(2 * j));
    MultiPoly dj = disc.pow(j);
    sum3 += dj * (-b).pow(n - 2 * j - 1) * odd;
    sum4 += dj * (-b).pow(n - 2 * j) * Coeff(3 * odd - even);
  }
  total += d_minus_1 * a * sum3 * Coeff(4);
  total += d_minus_1 * sum4;
  return total.divide_exact(3 * two_n);
}

inline std::vector<MultiPoly> lollipop_brackets(int n) {
  if (n < 1) throw input_error("lollipop_brackets: n must be >= 1");
  std::vector<MultiPoly> paths = path_brackets_by_recurrence(n);
  MultiPoly a = MultiPoly::variable(Var::A, 1);
  Monomial inv2;
  inv2.exp(Var::A) = -1;
  inv2.exp(Var::B) = 2;
  MultiPoly lam = a - MultiPoly::term(inv2, 1);  // A - A^-1 B^2
  Monomial invb;
  invb.exp(Var::A) = -1;
  invb.exp(Var::B) = 1;
  MultiPoly a_inv_b = MultiPoly::term(invb, 1);
  std::vector<MultiPoly> lam_pow{MultiPoly::one()};
  for (int i = 1; i <= n; ++i) lam_pow.push_back(lam_pow.back() * lam);
  std::vector<MultiPoly> out;
  for (int k = 1; k <= n; ++k) {
    MultiPoly sum;
    for (int i = 0; i <= k - 1; ++i)
      sum += lam_pow[static_cast<std::size_t>(i)] * paths[static_cast<std::size_t>(k - i)];
    out.push_back(lam_pow[static_cast<std::size_t>(k)] + a_inv_b * sum);
  }
  return out;
}

inline MultiPoly closed_form_lollipop(int n) { return lollipop_brackets(n).back(); }

// ---------------------------------------------------------------------------
// The bracket determines the vertex and loop counts:
//   n = log2([G](1,1,1))
//   loops = n/2 - (-1)^n/6 * d<G>/dA at 1.

struct StructuralCounts {
  int vertices = 0;
  int loops = 0;
};

inline StructuralCounts structural_counts(const MultiPoly& p) {
  Coeff total = p.eval({1, 1, 1, 1, 1, 1});
  if (total <= 0 || mpz_popcount(total.get_mpz_t()) != 1)
    throw input_error("structural_counts: [G](1,1,1) is not a power of two");
  int n = static_cast<int>(mpz_sizeinbase(total.get_mpz_t(), 2)) - 1;
  Coeff deriv = reduce_single(p).derivative_at_one();
  Coeff numer = 3 * Coeff(n) - ((n % 2 == 0) ? deriv : Coeff(-deriv));
  Coeff loops_q, rem;
  mpz_tdiv_qr(loops_q.get_mpz_t(), rem.get_mpz_t(), numer.get_mpz_t(), Coeff(6).get_mpz_t());
  if (rem != 0 || loops_q < 0 || loops_q > n)
    throw input_error("structural_counts: loop count is not a valid integer");
  return {n, static_cast<int>(loops_q.get_si())};
}

}  // namespace bracketeer
