#pragma once

#include <gmpxx.h>

#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bracketeer/errors.hpp"

namespace bracketeer {

using Coeff = mpz_class;

// Variable slots of MultiPoly. A, B, d carry the bracket; x, y serve the
// interlace polynomial; z serves the substitution identity that recovers
// the bracket from interlace polynomials.
enum class Var : int { A = 0, B = 1, d = 2, x = 3, y = 4, z = 5 };

inline constexpr int kVarCount = 6;
inline constexpr const char* kVarNames[kVarCount] = {"A", "B", "d", "x", "y", "z"};

struct Monomial {
  std::array<int, kVarCount> e{};

  int exp(Var v) const { return e[static_cast<std::size_t>(static_cast<int>(v))]; }
  int& exp(Var v) { return e[static_cast<std::size_t>(static_cast<int>(v))]; }

  Monomial times(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kVarCount; ++i) r.e[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(i)] + o.e[static_cast<std::size_t>(i)];
    return r;
  }

  bool operator==(const Monomial&) const = default;
};

// Canonical term order: descending lexicographic on the exponent vector.
struct MonomialDescending {
  bool operator()(const Monomial& a, const Monomial& b) const { return a.e > b.e; }
};

// Sparse Laurent polynomial with exact integer coefficients.
class MultiPoly {
public:
  using TermMap = std::map<Monomial, Coeff, MonomialDescending>;

  MultiPoly() = default;

  static MultiPoly constant(Coeff c) {
    MultiPoly p;
    if (c != 0) p.terms_.emplace(Monomial{}, std::move(c));
    return p;
  }

  static MultiPoly one() { return constant(1); }

  static MultiPoly variable(Var v, int exp = 1, Coeff c = 1) {
    MultiPoly p;
    Monomial m;
    m.exp(v) = exp;
    if (c != 0) p.terms_.emplace(m, std::move(c));
    return p;
  }

  static MultiPoly term(const Monomial& m, Coeff c) {
    MultiPoly p;
    if (c != 0) p.terms_.emplace(m, std::move(c));
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  void add_term(const Monomial& m, const Coeff& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  MultiPoly& operator-=(const MultiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

  MultiPoly operator-() const {
    MultiPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma.times(mb), ca * cb);
    return r;
  }

  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend MultiPoly operator*(const MultiPoly& a, const Coeff& c) {
    MultiPoly r;
    if (c == 0) return r;
    for (const auto& [m, cc] : a.terms_) r.terms_.emplace(m, cc * c);
    return r;
  }

  MultiPoly pow(int k) const {
    if (k < 0) throw input_error("MultiPoly::pow: exponent must be nonnegative");
    MultiPoly r = one();
    for (int i = 0; i < k; ++i) r *= *this;
    return r;
  }

  bool operator==(const MultiPoly&) const = default;

  bool has_var(Var v) const {
    for (const auto& [m, c] : terms_)
      if (m.exp(v) != 0) return true;
    return false;
  }

  int min_exp(Var v) const {
    bool first = true;
    int best = 0;
    for (const auto& [m, c] : terms_) {
      if (first || m.exp(v) < best) best = m.exp(v);
      first = false;
    }
    return best;
  }

  int max_exp(Var v) const {
    bool first = true;
    int best = 0;
    for (const auto& [m, c] : terms_) {
      if (first || m.exp(v) > best) best = m.exp(v);
      first = false;
    }
    return best;
  }

  // Terms whose v-exponent equals k, with the v factor stripped.
  MultiPoly coefficient_of(Var v, int k) const {
    MultiPoly r;
    for (const auto& [m, c] : terms_) {
      if (m.exp(v) != k) continue;
      Monomial stripped = m;
      stripped.exp(v) = 0;
      r.terms_.emplace(stripped, c);
    }
    return r;
  }

  // Replaces v by `value`. Every v-exponent must be nonnegative.
  MultiPoly substitute(Var v, const MultiPoly& value) const {
    int top = 0;
    for (const auto& [m, c] : terms_) {
      if (m.exp(v) < 0) throw input_error("substitute: negative exponent");
      if (m.exp(v) > top) top = m.exp(v);
    }
    std::vector<MultiPoly> powers;
    powers.reserve(static_cast<std::size_t>(top) + 1);
    powers.push_back(one());
    for (int i = 1; i <= top; ++i) powers.push_back(powers.back() * value);
    MultiPoly r;
    for (const auto& [m, c] : terms_) {
      Monomial stripped = m;
      stripped.exp(v) = 0;
      r += powers[static_cast<std::size_t>(m.exp(v))] * MultiPoly::term(stripped, c);
    }
    return r;
  }

  MultiPoly swap_vars(Var u, Var v) const {
    MultiPoly r;
    for (const auto& [m, c] : terms_) {
      Monomial s = m;
      std::swap(s.exp(u), s.exp(v));
      r.terms_.emplace(s, c);
    }
    return r;
  }

  // Exact quotient by d. Every term must carry d^k with k >= 1.
  MultiPoly divide_by_d() const {
    MultiPoly r;
    for (const auto& [m, c] : terms_) {
      if (m.exp(Var::d) < 1) throw input_error("divide_by_d: term without a d factor");
      Monomial s = m;
      --s.exp(Var::d);
      r.terms_.emplace(s, c);
    }
    return r;
  }

  // Exact quotient by an integer; every coefficient must be divisible.
  MultiPoly divide_exact(const Coeff& k) const {
    if (k == 0) throw input_error("divide_exact: zero divisor");
    MultiPoly r;
    for (const auto& [m, c] : terms_) {
      Coeff q, rem;
      mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), c.get_mpz_t(), k.get_mpz_t());
      if (rem != 0) throw input_error("divide_exact: coefficient not divisible");
      r.terms_.emplace(m, std::move(q));
    }
    return r;
  }

  MultiPoly derivative(Var v) const {
    MultiPoly r;
    for (const auto& [m, c] : terms_) {
      int k = m.exp(v);
      if (k == 0) continue;
      Monomial s = m;
      s.exp(v) = k - 1;
      r.add_term(s, c * k);
    }
    return r;
  }

  // Exact evaluation at an integer point. Variables that occur with a
  // negative exponent must evaluate to a nonzero value, and the overall
  // result must be an integer.
  Coeff eval(const std::array<long, kVarCount>& point) const {
    mpq_class total = 0;
    for (const auto& [m, c] : terms_) {
      mpq_class term(c);
      for (int i = 0; i < kVarCount; ++i) {
        int k = m.e[static_cast<std::size_t>(i)];
        if (k == 0) continue;
        long v = point[static_cast<std::size_t>(i)];
        if (v == 0 && k < 0)
          throw input_error(std::string("eval: zero value for negatively-exponentiated ") +
                            kVarNames[i]);
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(v < 0 ? -v : v),
                      static_cast<unsigned long>(k < 0 ? -k : k));
        if (v < 0 && (k & 1)) p = -p;
        if (k > 0)
          term *= p;
        else
          term /= p;
      }
      total += term;
    }
    total.canonicalize();
    if (total.get_den() != 1) throw input_error("eval: result is not an integer");
    return total.get_num();
  }

  std::string to_string() const;

private:
  TermMap terms_;
};

namespace detail {

inline void append_coeff(std::ostringstream& out, const Coeff& c, bool lead, bool bare) {
  Coeff mag = c < 0 ? Coeff(-c) : c;
  if (lead) {
    if (c < 0) out << '-';
  } else {
    out << (c < 0 ? " - " : " + ");
  }
  if (mag != 1 || bare) {
    out << mag.get_str();
    if (!bare) out << '*';
  }
}

}  // namespace detail

inline std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool lead = true;
  for (const auto& [m, c] : terms_) {
    bool bare = m == Monomial{};
    detail::append_coeff(out, c, lead, bare);
    bool first_factor = true;
    for (int i = 0; i < kVarCount; ++i) {
      int k = m.e[static_cast<std::size_t>(i)];
      if (k == 0) continue;
      if (!first_factor) out << '*';
      out << kVarNames[i];
      if (k != 1) out << '^' << k;
      first_factor = false;
    }
    lead = false;
  }
  return out.str();
}

// Laurent polynomial in the single variable A.
class OnePoly {
public:
  using TermMap = std::map<int, Coeff, std::greater<int>>;

  OnePoly() = default;

  static OnePoly constant(Coeff c) {
    OnePoly p;
    if (c != 0) p.terms_.emplace(0, std::move(c));
    return p;
  }

  static OnePoly term(int exp, Coeff c) {
    OnePoly p;
    if (c != 0) p.terms_.emplace(exp, std::move(c));
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(int exp, const Coeff& c) {
    if (c == 0) return;
    auto it = terms_.find(exp);
    if (it == terms_.end()) {
      terms_.emplace(exp, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  OnePoly& operator+=(const OnePoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  friend OnePoly operator+(OnePoly a, const OnePoly& b) { return a += b; }

  OnePoly operator-() const {
    OnePoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  friend OnePoly operator-(OnePoly a, const OnePoly& b) { return a += -b; }

  friend OnePoly operator*(const OnePoly& a, const OnePoly& b) {
    OnePoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }

  OnePoly& operator*=(const OnePoly& o) { return *this = *this * o; }

  OnePoly pow(int k) const {
    if (k < 0) throw input_error("OnePoly::pow: exponent must be nonnegative");
    OnePoly r = constant(1);
    for (int i = 0; i < k; ++i) r *= *this;
    return r;
  }

  bool operator==(const OnePoly&) const = default;

  // Value at A = 1.
  Coeff eval_at_one() const {
    Coeff s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  // Formal derivative evaluated at A = 1: sum of c * exponent.
  Coeff derivative_at_one() const {
    Coeff s = 0;
    for (const auto& [e, c] : terms_) s += c * e;
    return s;
  }

  std::string to_string(const char* var = "A") const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool lead = true;
    for (const auto& [e, c] : terms_) {
      detail::append_coeff(out, c, lead, e == 0);
      if (e != 0) {
        out << var;
        if (e != 1) out << '^' << e;
      }
      lead = false;
    }
    return out.str();
  }

private:
  TermMap terms_;
};

// Laurent polynomial in t with exponents counted in quarters: the term
// keyed by k stands for t^(k/4).
class QuarterPoly {
public:
  using TermMap = std::map<int, Coeff, std::greater<int>>;

  QuarterPoly() = default;

  static QuarterPoly constant(Coeff c) {
    QuarterPoly p;
    if (c != 0) p.terms_.emplace(0, std::move(c));
    return p;
  }

  static QuarterPoly term(int quarters, Coeff c) {
    QuarterPoly p;
    if (c != 0) p.terms_.emplace(quarters, std::move(c));
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1; }

  void add_term(int quarters, const Coeff& c) {
    if (c == 0) return;
    auto it = terms_.find(quarters);
    if (it == terms_.end()) {
      terms_.emplace(quarters, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  QuarterPoly& operator+=(const QuarterPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  friend QuarterPoly operator*(const QuarterPoly& a, const QuarterPoly& b) {
    QuarterPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }

  QuarterPoly& operator*=(const QuarterPoly& o) { return *this = *this * o; }

  bool operator==(const QuarterPoly&) const = default;

  // Value at t = 1.
  Coeff eval_at_one() const {
    Coeff s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  // 4 * (d/dt at t = 1): sum of c * quarters. The caller divides by 4.
  Coeff derivative_at_one_times_four() const {
    Coeff s = 0;
    for (const auto& [e, c] : terms_) s += c * e;
    return s;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool lead = true;
    for (const auto& [q, c] : terms_) {
      detail::append_coeff(out, c, lead, q == 0);
      if (q != 0) {
        out << 't';
        int g = std::gcd(q < 0 ? -q : q, 4);
        int num = q / g, den = 4 / g;
        if (den == 1) {
          if (num != 1) out << '^' << num;
        } else {
          out << "^(" << num << '/' << den << ')';
        }
      }
      lead = false;
    }
    return out.str();
  }

private:
  TermMap terms_;
};

// <G>(A) = [G](A, A^-1, -A^2 - A^-2).
inline OnePoly reduce_single(const MultiPoly& p) {
  for (const auto& [m, c] : p.terms())
    if (m.exp(Var::x) != 0 || m.exp(Var::y) != 0 || m.exp(Var::z) != 0)
      throw input_error("reduce_single: input is not a polynomial in A, B, d");
  int top = 0;
  for (const auto& [m, c] : p.terms())
    if (m.exp(Var::d) > top) top = m.exp(Var::d);
  if (top < 0) top = 0;
  OnePoly loop_value;  // -A^2 - A^-2
  loop_value.add_term(2, -1);
  loop_value.add_term(-2, -1);
  std::vector<OnePoly> d_pow;
  d_pow.reserve(static_cast<std::size_t>(top) + 1);
  d_pow.push_back(OnePoly::constant(1));
  for (int i = 1; i <= top; ++i) d_pow.push_back(d_pow.back() * loop_value);
  OnePoly r;
  for (const auto& [m, c] : p.terms()) {
    if (m.exp(Var::d) < 0) throw input_error("reduce_single: negative d exponent");
    int shift = m.exp(Var::A) - m.exp(Var::B);
    for (const auto& [e, cc] : d_pow[static_cast<std::size_t>(m.exp(Var::d))].terms())
      r.add_term(e + shift, cc * c);
  }
  return r;
}

// V_G(t) = (-1)^n * t^((3n-6*loops)/4) * <G>(t^(-1/4)).
// A^k contributes quarter-exponent -k; the prefactor adds 3n - 6*loops
// quarters. Every resulting exponent must be a multiple of a half.
inline QuarterPoly to_jones(const OnePoly& reduced, int n, int loops) {
  QuarterPoly r;
  int shift = 3 * n - 6 * loops;
  bool negate = (n & 1) != 0;
  for (const auto& [e, c] : reduced.terms()) {
    int q = -e + shift;
    if (q % 2 != 0)
      throw invariant_error("to_jones: exponent is not a multiple of t^(1/2)");
    r.add_term(q, negate ? Coeff(-c) : c);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Parsing of the canonical text forms.

namespace detail {

struct PolyLexer {
  const std::string& s;
  std::size_t pos = 0;

  explicit PolyLexer(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool peek_alpha() {
    skip_ws();
    return pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]));
  }

  bool peek_digit() {
    skip_ws();
    return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
  }

  bool done() {
    skip_ws();
    return pos >= s.size();
  }

  Coeff read_natural() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw input_error("polynomial parse: expected a number");
    return Coeff(s.substr(start, pos - start));
  }

  int read_int() {
    skip_ws();
    bool neg = eat('-');
    Coeff n = read_natural();
    if (!n.fits_sint_p()) throw input_error("polynomial parse: exponent too large");
    int v = static_cast<int>(n.get_si());
    return neg ? -v : v;
  }

  char read_name() {
    skip_ws();
    if (pos >= s.size() || !std::isalpha(static_cast<unsigned char>(s[pos])))
      throw input_error("polynomial parse: expected a variable name");
    return s[pos++];
  }
};

}  // namespace detail

inline MultiPoly parse_multipoly(const std::string& text) {
  detail::PolyLexer lex(text);
  MultiPoly result;
  bool first = true;
  while (!lex.done()) {
    int sign = 1;
    if (first) {
      if (lex.eat('-')) sign = -1;
    } else {
      if (lex.eat('+'))
        sign = 1;
      else if (lex.eat('-'))
        sign = -1;
      else
        throw input_error("polynomial parse: expected '+' or '-'");
    }
    first = false;
    Coeff coeff = 1;
    bool have_factor = false;
    if (lex.peek_digit()) {
      coeff = lex.read_natural();
      have_factor = true;
      if (!lex.eat('*')) {
        result.add_term(Monomial{}, sign < 0 ? Coeff(-coeff) : coeff);
        continue;
      }
      have_factor = false;
    }
    Monomial m;
    do {
      char name = lex.read_name();
      int idx = -1;
      for (int i = 0; i < kVarCount; ++i)
        if (kVarNames[i][0] == name) idx = i;
      if (idx < 0) throw input_error(std::string("polynomial parse: unknown variable '") + name + "'");
      int exp = 1;
      if (lex.eat('^')) exp = lex.read_int();
      m.e[static_cast<std::size_t>(idx)] += exp;
      have_factor = true;
    } while (lex.eat('*'));
    if (!have_factor) throw input_error("polynomial parse: empty term");
    result.add_term(m, sign < 0 ? Coeff(-coeff) : coeff);
  }
  if (first) throw input_error("polynomial parse: empty input");
  return result;
}

inline OnePoly parse_onepoly(const std::string& text) {
  MultiPoly p = parse_multipoly(text);
  OnePoly r;
  for (const auto& [m, c] : p.terms()) {
    for (int i = 1; i < kVarCount; ++i)
      if (m.e[static_cast<std::size_t>(i)] != 0)
        throw input_error("parse_onepoly: expected a polynomial in A only");
    r.add_term(m.exp(Var::A), c);
  }
  return r;
}

inline QuarterPoly parse_quarterpoly(const std::string& text) {
  detail::PolyLexer lex(text);
  QuarterPoly result;
  bool first = true;
  while (!lex.done()) {
    int sign = 1;
    if (first) {
      if (lex.eat('-')) sign = -1;
    } else {
      if (lex.eat('+'))
        sign = 1;
      else if (lex.eat('-'))
        sign = -1;
      else
        throw input_error("polynomial parse: expected '+' or '-'");
    }
    first = false;
    Coeff coeff = 1;
    bool want_var = true;
    if (lex.peek_digit()) {
      coeff = lex.read_natural();
      want_var = lex.eat('*');
    } else {
      want_var = true;
    }
    int quarters = 0;
    if (want_var) {
      char name = lex.read_name();
      if (name != 't') throw input_error("parse_quarterpoly: expected variable t");
      quarters = 4;
      if (lex.eat('^')) {
        if (lex.eat('(')) {
          int num = lex.read_int();
          if (!lex.eat('/')) throw input_error("parse_quarterpoly: expected '/'");
          int den = lex.read_int();
          if (!lex.eat(')')) throw input_error("parse_quarterpoly: expected ')'");
          if (den != 1 && den != 2 && den != 4)
            throw input_error("parse_quarterpoly: denominator must divide 4");
          quarters = num * (4 / den);
        } else {
          quarters = 4 * lex.read_int();
        }
      }
    }
    result.add_term(quarters, sign < 0 ? Coeff(-coeff) : coeff);
  }
  if (first) throw input_error("polynomial parse: empty input");
  return result;
}

}  // namespace bracketeer
