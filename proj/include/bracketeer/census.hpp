#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bracketeer/bracket.hpp"
#include "bracketeer/errors.hpp"
#include "bracketeer/graph.hpp"
#include "bracketeer/parallel.hpp"

namespace bracketeer {

enum class CensusKind { looped, simple };
enum class CensusVariant { full, one_variable };

namespace detail {

// Orbit-minimality filter: a labeled graph survives exactly when no
// vertex permutation yields a lexicographically smaller row encoding, so
// each isomorphism class contributes its least labeling.
inline bool min_in_orbit(const std::array<std::uint32_t, 8>& rows, int n,
                         const std::vector<std::array<int, 8>>& perms) {
  for (const auto& p : perms) {
    for (int i = 0; i < n; ++i) {
      std::uint32_t src = rows[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])];
      std::uint32_t permuted = 0;
      for (int j = 0; j < n; ++j)
        permuted |= ((src >> p[static_cast<std::size_t>(j)]) & 1u) << j;
      if (permuted < rows[static_cast<std::size_t>(i)]) return false;
      if (permuted > rows[static_cast<std::size_t>(i)]) break;
    }
  }
  return true;
}

}  // namespace detail

// One representative per isomorphism class of n-vertex graphs, looped or
// simple, in increasing order of the minimal labeling.
inline std::vector<LoopedGraph> enumerate_classes(int n, CensusKind kind) {
  if (n < 0 || n > 7) throw input_error("enumerate_classes: n must be within [0,7]");
  if (n == 0) return {LoopedGraph(0)};

  std::vector<std::array<int, 8>> perms;
  {
    std::array<int, 8> p{};
    std::iota(p.begin(), p.begin() + n, 0);
    while (std::next_permutation(p.begin(), p.begin() + n)) perms.push_back(p);
  }

  int edge_bits = n * (n - 1) / 2;
  int loop_bits = kind == CensusKind::looped ? n : 0;
  std::size_t total = std::size_t{1} << (edge_bits + loop_bits);

  int workers = total >= 4096 ? thread_count() : 1;
  std::size_t nchunks = std::min<std::size_t>(static_cast<std::size_t>(workers), total);
  std::vector<std::vector<std::uint64_t>> survivors(nchunks);

  parallel_chunks(
      total,
      [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        std::array<std::uint32_t, 8> rows{};
        for (std::size_t code = begin; code < end; ++code) {
          rows.fill(0);
          int bit = 0;
          for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j, ++bit)
              if ((code >> bit) & 1u) {
                rows[static_cast<std::size_t>(i)] |= std::uint32_t{1} << j;
                rows[static_cast<std::size_t>(j)] |= std::uint32_t{1} << i;
              }
          for (int i = 0; i < loop_bits; ++i)
            if ((code >> (edge_bits + i)) & 1u)
              rows[static_cast<std::size_t>(i)] |= std::uint32_t{1} << i;
          if (detail::min_in_orbit(rows, n, perms)) survivors[chunk].push_back(code);
        }
      },
      workers);

  std::vector<LoopedGraph> out;
  for (const auto& chunk : survivors)
    for (std::uint64_t code : chunk) {
      LoopedGraph g(n);
      int bit = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
          if ((code >> bit) & 1u) g.set_edge(i, j);
      for (int i = 0; i < loop_bits; ++i)
        if ((code >> (edge_bits + i)) & 1u) g.set_loop(i);
      out.push_back(g);
    }
  return out;
}

struct CensusRecord {
  std::string canon;  // canonical form bytes
  int n = 0;
  int loops = 0;
  bool connected = false;
  std::string bracket_text;  // canonical [G] text
  std::string one_var_text;  // canonical [G](A,1,A) text
};

struct CensusResult {
  int n = 0;
  CensusKind kind = CensusKind::looped;
  CensusVariant variant = CensusVariant::full;
  std::vector<CensusRecord> records;  // sorted by canonical form
  std::size_t classes = 0;
  std::size_t distinct = 0;                          // distinct polynomials of the variant
  std::vector<std::vector<std::size_t>> collisions;  // record indices sharing a polynomial
};

inline const std::string& census_variant_text(const CensusRecord& r, CensusVariant variant) {
  return variant == CensusVariant::full ? r.bracket_text : r.one_var_text;
}

inline CensusResult bracket_census(int n, CensusKind kind,
                                   CensusVariant variant = CensusVariant::full) {
  std::vector<LoopedGraph> classes = enumerate_classes(n, kind);
  CensusResult result;
  result.n = n;
  result.kind = kind;
  result.variant = variant;
  result.classes = classes.size();
  result.records.resize(classes.size());

  int workers = classes.size() >= 64 ? thread_count() : 1;
  parallel_chunks(
      classes.size(),
      [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          const LoopedGraph& g = classes[i];
          CensusRecord& rec = result.records[i];
          MultiPoly bracket = state_sum_bracket(g);
          rec.canon = canonical_form(g);
          rec.n = g.n();
          rec.loops = g.loop_count();
          rec.connected = g.is_connected();
          rec.bracket_text = bracket.to_string();
          rec.one_var_text = one_variable_bracket(bracket).to_string("A");
        }
      },
      workers);

  std::sort(result.records.begin(), result.records.end(),
            [](const CensusRecord& a, const CensusRecord& b) { return a.canon < b.canon; });

  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < result.records.size(); ++i)
    groups[census_variant_text(result.records[i], variant)].push_back(i);
  result.distinct = groups.size();
  for (auto& [text, members] : groups)
    if (members.size() > 1) result.collisions.push_back(members);
  return result;
}

// --- trees -----------------------------------------------------------------

inline std::vector<LoopedGraph> enumerate_trees(int n) {
  if (n < 1 || n > 7) throw input_error("enumerate_trees: n must be within [1,7]");
  std::vector<LoopedGraph> trees;
  for (const LoopedGraph& g : enumerate_classes(n, CensusKind::simple))
    if (g.edge_count() == n - 1 && g.is_connected()) trees.push_back(g);
  return trees;
}

struct TreeCensusRow {
  int n = 0;
  std::size_t trees = 0;
  bool brackets_distinct = false;
  std::size_t pairs = 0;                  // unordered pairs of distinct trees
  std::size_t jones_separated_pairs = 0;  // pairs the jones polynomial tells apart
};

inline std::vector<TreeCensusRow> tree_census(int max_n) {
  if (max_n > 6) throw input_error("tree_census: n must be within [1,6]");
  std::vector<TreeCensusRow> out;
  for (int n = 1; n <= max_n; ++n) {
    std::vector<LoopedGraph> trees = enumerate_trees(n);
    TreeCensusRow row;
    row.n = n;
    row.trees = trees.size();
    std::vector<std::string> brackets;
    std::vector<QuarterPoly> vs;
    for (const LoopedGraph& t : trees) {
      brackets.push_back(state_sum_bracket(t).to_string());
      vs.push_back(jones(t));
    }
    std::set<std::string> distinct(brackets.begin(), brackets.end());
    row.brackets_distinct = distinct.size() == trees.size();
    for (std::size_t i = 0; i < trees.size(); ++i)
      for (std::size_t j = i + 1; j < trees.size(); ++j) {
        ++row.pairs;
        if (!(vs[i] == vs[j])) ++row.jones_separated_pairs;
      }
    out.push_back(row);
  }
  return out;
}

// --- persistence -------------------------------------------------------------

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex_bytes(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

// Tab-separated census: body rows are
//   <canonical form hex> <n> <loops> <connected> <variant polynomial>
// preceded by a descriptive header and an fnv1a hash of the body.
inline std::string census_tsv(const CensusResult& census) {
  std::ostringstream body;
  for (const CensusRecord& r : census.records)
    body << hex_bytes(r.canon) << '\t' << r.n << '\t' << r.loops << '\t' << (r.connected ? 1 : 0)
         << '\t' << census_variant_text(r, census.variant) << '\n';
  std::string body_text = body.str();
  std::ostringstream out;
  out << "# bracketeer census\tn=" << census.n << "\tkind="
      << (census.kind == CensusKind::looped ? "looped" : "simple") << "\tvariant="
      << (census.variant == CensusVariant::full ? "full" : "one-var")
      << "\tclasses=" << census.classes << "\tdistinct=" << census.distinct << '\n';
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a(body_text)));
  out << "# fnv1a\t" << hash << '\n' << body_text;
  return out.str();
}

// Writes the census, or verifies it byte-for-byte against an existing
// run of the same file.
inline void write_or_verify_census(const std::string& path, const std::string& content) {
  std::ifstream existing(path, std::ios::binary);
  if (existing) {
    std::ostringstream buf;
    buf << existing.rdbuf();
    if (buf.str() != content)
      throw invariant_error("census file " + path + " disagrees with this run");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot open " + path + " for writing");
  out << content;
}

}  // namespace bracketeer
