// Multivariate polynomials with natural-number coefficients, the raw
// material of finite presentations.  Includes a small parser for the
// document grammar: +, *, ^, natural literals, parentheses, identifiers.
#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pring/base.hpp"
#include "pring/structures.hpp"

namespace pring {

using exponent_vec = std::vector<unsigned>;

// Terms map exponent vectors to positive coefficients; zero coefficients
// are never stored.  The variable count is fixed per polynomial.
struct nat_poly {
  std::size_t nvars = 0;
  std::map<exponent_vec, std::uint64_t> terms;

  bool is_zero() const { return terms.empty(); }

  friend bool operator==(const nat_poly&, const nat_poly&) = default;
  friend bool operator<(const nat_poly& a, const nat_poly& b) {
    return a.nvars != b.nvars ? a.nvars < b.nvars : a.terms < b.terms;
  }
};

inline nat_poly poly_constant(std::size_t nvars, std::uint64_t c) {
  nat_poly p;
  p.nvars = nvars;
  if (c) p.terms[exponent_vec(nvars, 0)] = c;
  return p;
}

inline nat_poly poly_var(std::size_t nvars, std::size_t i) {
  nat_poly p;
  p.nvars = nvars;
  exponent_vec e(nvars, 0);
  e[i] = 1;
  p.terms[e] = 1;
  return p;
}

inline nat_poly poly_add(const nat_poly& a, const nat_poly& b) {
  nat_poly out = a;
  for (const auto& [e, c] : b.terms) out.terms[e] += c;
  return out;
}

inline nat_poly poly_mul(const nat_poly& a, const nat_poly& b) {
  nat_poly out;
  out.nvars = a.nvars;
  for (const auto& [e1, c1] : a.terms) {
    for (const auto& [e2, c2] : b.terms) {
      exponent_vec e(a.nvars);
      for (std::size_t i = 0; i < a.nvars; ++i) e[i] = e1[i] + e2[i];
      out.terms[e] += c1 * c2;
    }
  }
  return out;
}

inline nat_poly poly_pow(const nat_poly& a, unsigned k) {
  nat_poly out = poly_constant(a.nvars, 1);
  for (unsigned i = 0; i < k; ++i) out = poly_mul(out, a);
  return out;
}

// The unique factorization into coefficient-1 monomials: a coefficient-k
// term contributes k copies.
inline std::vector<exponent_vec> monomials(const nat_poly& p) {
  std::vector<exponent_vec> out;
  for (const auto& [e, c] : p.terms) {
    for (std::uint64_t i = 0; i < c; ++i) out.push_back(e);
  }
  return out;
}

inline std::string poly_to_string(const nat_poly& p,
                                  const std::vector<std::string>& vars) {
  if (p.terms.empty()) return "0";
  std::ostringstream os;
  bool first_term = true;
  for (const auto& [e, c] : p.terms) {
    if (!first_term) os << "+";
    first_term = false;
    bool have_factor = false;
    if (c != 1) {
      os << c;
      have_factor = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (have_factor) os << "*";
      os << vars[i];
      if (e[i] > 1) os << "^" << e[i];
      have_factor = true;
    }
    if (!have_factor) os << "1";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Parser: expr := term ('+' term)*; term := factor ('*' factor)*;
// factor := atom ('^' nat)?; atom := nat | ident | '(' expr ')'.

namespace detail {

class poly_parser {
 public:
  poly_parser(const std::string& text, const std::vector<std::string>& vars)
      : text_(text), vars_(vars) {}

  nat_poly parse() {
    nat_poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) {
      throw parse_error("polynomial: trailing input at '" +
                        text_.substr(pos_) + "'");
    }
    return p;
  }

 private:
  nat_poly expr() {
    nat_poly p = term();
    for (;;) {
      skip_ws();
      if (!eat('+')) return p;
      p = poly_add(p, term());
    }
  }

  nat_poly term() {
    nat_poly p = factor();
    for (;;) {
      skip_ws();
      if (!eat('*')) return p;
      p = poly_mul(p, factor());
    }
  }

  nat_poly factor() {
    nat_poly p = atom();
    skip_ws();
    if (eat('^')) {
      skip_ws();
      if (pos_ >= text_.size() || !std::isdigit(byte(pos_))) {
        throw parse_error("polynomial: exponent must be a natural number");
      }
      p = poly_pow(p, static_cast<unsigned>(number()));
    }
    return p;
  }

  nat_poly atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw parse_error("polynomial: unexpected end");
    if (eat('(')) {
      nat_poly p = expr();
      skip_ws();
      if (!eat(')')) throw parse_error("polynomial: missing ')'");
      return p;
    }
    if (std::isdigit(byte(pos_))) {
      return poly_constant(vars_.size(), number());
    }
    if (std::isalpha(byte(pos_)) || byte(pos_) == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(byte(pos_)) || byte(pos_) == '_')) {
        ++pos_;
      }
      std::string name = text_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i] == name) return poly_var(vars_.size(), i);
      }
      throw parse_error("polynomial: unknown generator '" + name + "'");
    }
    throw parse_error(std::string("polynomial: unexpected character '") +
                      text_[pos_] + "'");
  }

  std::uint64_t number() {
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(byte(pos_))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  unsigned char byte(std::size_t i) const {
    return static_cast<unsigned char>(text_[i]);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(byte(pos_))) ++pos_;
  }

  bool eat(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  const std::string& text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline nat_poly parse_poly(const std::string& text,
                           const std::vector<std::string>& vars) {
  return detail::poly_parser(text, vars).parse();
}

// ---------------------------------------------------------------------------
// Evaluation in a partial ring.

inline elem eval_monomial(const partial_ring& A, const exponent_vec& m,
                          const std::vector<elem>& assignment) {
  elem v = A.one();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (unsigned k = 0; k < m[i]; ++k) v = A.mul(v, assignment[i]);
  }
  return v;
}

// A polynomial value can be calculated iff the multiset of its evaluated
// monomials is summable; sub-sum closure then covers every subset.
inline bool can_calculate(const partial_ring& A, const nat_poly& p,
                          const std::vector<elem>& assignment) {
  std::vector<elem> values;
  for (const auto& m : monomials(p)) {
    values.push_back(eval_monomial(A, m, assignment));
  }
  return multiset_summable(A, values);
}

// Pre: can_calculate.
inline elem eval_poly(const partial_ring& A, const nat_poly& p,
                      const std::vector<elem>& assignment) {
  std::vector<elem> values;
  for (const auto& m : monomials(p)) {
    values.push_back(eval_monomial(A, m, assignment));
  }
  auto s = sum_multiset(A, values);
  if (!s) throw error("eval_poly: value cannot be calculated");
  return *s;
}

}  // namespace pring
