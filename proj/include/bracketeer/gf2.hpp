#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

#include "bracketeer/errors.hpp"

namespace bracketeer {

// Row rank of a bit-packed matrix over GF(2). Rows carry their bits in
// the low `width` positions of each word (width <= 64). Word-parallel
// elimination, pivoting on the first set bit of each incoming row.
inline int gf2_rank(const std::uint64_t* rows, int count) {
  std::array<std::uint64_t, 64> pivot{};
  int rank = 0;
  for (int i = 0; i < count; ++i) {
    std::uint64_t r = rows[i];
    while (r != 0) {
      int b = std::countr_zero(r);
      if (pivot[static_cast<std::size_t>(b)]) {
        r ^= pivot[static_cast<std::size_t>(b)];
      } else {
        pivot[static_cast<std::size_t>(b)] = r;
        ++rank;
        break;
      }
    }
  }
  return rank;
}

inline int gf2_rank(const std::vector<std::uint64_t>& rows) {
  return gf2_rank(rows.data(), static_cast<int>(rows.size()));
}

// Square bit matrix over GF(2), one 64-bit word per row.
class Gf2Matrix {
public:
  Gf2Matrix() = default;

  explicit Gf2Matrix(int n) : n_(n), rows_(static_cast<std::size_t>(n), 0) {
    if (n < 0 || n > 64) throw input_error("Gf2Matrix: dimension must be in [0,64]");
  }

  int dim() const { return n_; }

  bool get(int i, int j) const { return (rows_[static_cast<std::size_t>(i)] >> j) & 1u; }

  void set(int i, int j, bool value) {
    std::uint64_t bit = std::uint64_t{1} << j;
    if (value)
      rows_[static_cast<std::size_t>(i)] |= bit;
    else
      rows_[static_cast<std::size_t>(i)] &= ~bit;
  }

  std::uint64_t row(int i) const { return rows_[static_cast<std::size_t>(i)]; }

  void xor_row(int i, std::uint64_t bits) { rows_[static_cast<std::size_t>(i)] ^= bits; }

  // XOR the given bit mask into the diagonal.
  void xor_diagonal(std::uint64_t mask) {
    for (int i = 0; i < n_; ++i)
      rows_[static_cast<std::size_t>(i)] ^= (mask >> i & 1u) << i;
  }

  int rank() const { return gf2_rank(rows_.data(), n_); }
  int nullity() const { return n_ - rank(); }

  Gf2Matrix transposed() const {
    Gf2Matrix t(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (get(i, j)) t.set(j, i, true);
    return t;
  }

  bool operator==(const Gf2Matrix& other) const = default;

private:
  int n_ = 0;
  std::vector<std::uint64_t> rows_;
};

}  // namespace bracketeer
