// Finite partial magmas, monoids and rings as explicit tables, with the
// axiom validators and n-ary summability.
//
// A partial magma is a carrier with a distinguished zero, a symmetric
// summability relation and a sum defined exactly on summable pairs.  A
// partial monoid additionally satisfies strict associativity: (a,b) and
// (a+b,c) are summable iff (b,c) and (a,b+c) are, with equal results.  A
// partial ring carries a total commutative associative unital
// multiplication that distributes over the partial sum.
#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "pring/base.hpp"

namespace pring {

enum class level { magma, monoid, ring };

inline const char* to_string(level lv) {
  switch (lv) {
    case level::magma: return "magma";
    case level::monoid: return "monoid";
    default: return "ring";
  }
}

class partial_magma {
 public:
  partial_magma() = default;

  partial_magma(std::vector<std::string> names, elem zero)
      : n_(names.size()),
        names_(std::move(names)),
        zero_(zero),
        summable_(n_),
        add_(n_ * n_, undef) {}

  std::size_t size() const { return n_; }
  elem zero() const { return zero_; }
  const std::string& name(elem a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }

  bool summable(elem a, elem b) const { return summable_.get(a, b); }

  // Pre: summable(a, b).
  elem add(elem a, elem b) const { return add_[a * n_ + b]; }

  std::optional<elem> try_add(elem a, elem b) const {
    if (a >= n_ || b >= n_ || !summable_.get(a, b)) return std::nullopt;
    elem c = add_[a * n_ + b];
    if (c >= n_) return std::nullopt;
    return c;
  }

  // Raw table access for the validator.
  elem raw_add(elem a, elem b) const { return add_[a * n_ + b]; }

  // Declares a + b = c.  By default also records b + a = c; pass
  // symmetric = false to build deliberately broken tables for the
  // validator.
  void set_sum(elem a, elem b, elem c, bool symmetric = true) {
    summable_.set(a, b);
    add_[a * n_ + b] = c;
    if (symmetric && !summable_.get(b, a)) {
      summable_.set(b, a);
      add_[b * n_ + a] = c;
    }
  }

  void unset_sum(elem a, elem b, bool symmetric = true) {
    summable_.set(a, b, false);
    add_[a * n_ + b] = undef;
    if (symmetric) {
      summable_.set(b, a, false);
      add_[b * n_ + a] = undef;
    }
  }

  // Adds the sums 0 + a = a = a + 0 forced by axiom (a).
  void add_zero_sums() {
    for (elem a = 0; a < n_; ++a) {
      set_sum(zero_, a, a);
      set_sum(a, zero_, a);
    }
  }

  const bitmat& summable_matrix() const { return summable_; }

  friend bool operator==(const partial_magma&, const partial_magma&) = default;

 protected:
  std::size_t n_ = 0;
  std::vector<std::string> names_;
  elem zero_ = 0;
  bitmat summable_;
  std::vector<elem> add_;
};

class partial_ring : public partial_magma {
 public:
  partial_ring() = default;

  partial_ring(partial_magma base, elem one)
      : partial_magma(std::move(base)), one_(one), mul_(n_ * n_, undef) {}

  elem one() const { return one_; }

  elem mul(elem a, elem b) const { return mul_[a * n_ + b]; }

  void set_mul(elem a, elem b, elem c, bool symmetric = true) {
    mul_[a * n_ + b] = c;
    if (symmetric && mul_[b * n_ + a] == undef) mul_[b * n_ + a] = c;
  }

  elem pow(elem a, unsigned k) const {
    elem r = one_;
    for (unsigned i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  bool is_unit(elem a) const { return inverse(a).has_value(); }

  std::optional<elem> inverse(elem a) const {
    for (elem b = 0; b < n_; ++b) {
      if (mul(a, b) == one_ && mul(b, a) == one_) return b;
    }
    return std::nullopt;
  }

  friend bool operator==(const partial_ring&, const partial_ring&) = default;

 private:
  elem one_ = 0;
  std::vector<elem> mul_;
};

// ---------------------------------------------------------------------------
// Validation

struct violation {
  violation(std::string axiom, std::vector<elem> witness, std::string note = "")
      : axiom(std::move(axiom)), witness(std::move(witness)), note(std::move(note)) {}

  std::string axiom;            // "structural", "a", "b", "c", "mul-*", "bilinear"
  std::vector<elem> witness;    // offending elements, in axiom order
  std::string note;
};

struct validation_report {
  std::vector<violation> items;

  bool ok() const { return items.empty(); }

  std::string str(const partial_magma& A) const {
    std::ostringstream os;
    for (const auto& v : items) {
      os << "axiom " << v.axiom << " violated at (";
      for (std::size_t i = 0; i < v.witness.size(); ++i) {
        if (i) os << ",";
        elem e = v.witness[i];
        os << (e < A.size() ? A.name(e) : "#" + std::to_string(e));
      }
      os << ")";
      if (!v.note.empty()) os << ": " << v.note;
      os << "\n";
    }
    return os.str();
  }
};

namespace detail {

inline bool check_structural(const partial_magma& A, validation_report& rep) {
  bool ok = true;
  std::size_t n = A.size();
  if (A.zero() >= n) {
    rep.items.push_back({"structural", {A.zero()}, "zero out of range"});
    ok = false;
  }
  for (elem a = 0; a < n; ++a) {
    for (elem b = 0; b < n; ++b) {
      if (A.summable(a, b) && A.raw_add(a, b) >= n) {
        rep.items.push_back({"structural", {a, b}, "sum value out of range"});
        ok = false;
      }
    }
  }
  for (elem a = 0; a < n; ++a) {
    for (elem b = a; b < n; ++b) {
      if (A.name(a) == A.name(b) && a != b) {
        rep.items.push_back({"structural", {a, b}, "duplicate element name"});
        ok = false;
      }
    }
  }
  return ok;
}

}  // namespace detail

// Checks the magma axioms (a), (b) and, at level monoid, strict
// associativity (c).  Reports every violation with a witness.
inline validation_report validate(const partial_magma& A, level lv) {
  validation_report rep;
  if (!detail::check_structural(A, rep)) return rep;
  const std::size_t n = A.size();
  const elem z = A.zero();

  for (elem a = 0; a < n; ++a) {
    if (!A.summable(z, a) || A.add(z, a) != a) rep.items.push_back({"a", {z, a}});
    if (!A.summable(a, z) || A.add(a, z) != a) rep.items.push_back({"a", {a, z}});
  }
  for (elem a = 0; a < n; ++a) {
    for (elem b = 0; b < n; ++b) {
      if (A.summable(a, b) && (!A.summable(b, a) || A.add(a, b) != A.add(b, a))) {
        rep.items.push_back({"b", {a, b}});
      }
    }
  }
  if (lv == level::magma) return rep;

  for (elem a = 0; a < n; ++a) {
    for (elem b = 0; b < n; ++b) {
      for (elem c = 0; c < n; ++c) {
        bool left = A.summable(a, b) && A.raw_add(a, b) < n &&
                    A.summable(A.add(a, b), c);
        bool right = A.summable(b, c) && A.raw_add(b, c) < n &&
                     A.summable(a, A.add(b, c));
        if (left != right) {
          rep.items.push_back({"c", {a, b, c}, "one association defined, the other not"});
        } else if (left && A.add(A.add(a, b), c) != A.add(a, A.add(b, c))) {
          rep.items.push_back({"c", {a, b, c}, "associated sums differ"});
        }
      }
    }
  }
  return rep;
}

inline validation_report validate(const partial_ring& A, level lv = level::ring) {
  validation_report rep = validate(static_cast<const partial_magma&>(A),
                                   lv == level::ring ? level::monoid : lv);
  if (lv != level::ring || !rep.ok()) return rep;
  const std::size_t n = A.size();

  if (A.one() >= n) {
    rep.items.push_back({"structural", {A.one()}, "one out of range"});
    return rep;
  }
  for (elem a = 0; a < n; ++a) {
    for (elem b = 0; b < n; ++b) {
      if (A.mul(a, b) >= n) {
        rep.items.push_back({"mul-total", {a, b}, "product undefined"});
      }
    }
  }
  if (!rep.ok()) return rep;

  for (elem a = 0; a < n; ++a) {
    if (A.mul(A.one(), a) != a) rep.items.push_back({"mul-unit", {a}});
    if (A.mul(A.zero(), a) != A.zero()) rep.items.push_back({"mul-zero", {a}});
  }
  for (elem a = 0; a < n; ++a) {
    for (elem b = 0; b < n; ++b) {
      if (A.mul(a, b) != A.mul(b, a)) rep.items.push_back({"mul-comm", {a, b}});
      for (elem c = 0; c < n; ++c) {
        if (A.mul(A.mul(a, b), c) != A.mul(a, A.mul(b, c))) {
          rep.items.push_back({"mul-assoc", {a, b, c}});
        }
      }
    }
  }
  for (elem a = 0; a < n; ++a) {
    for (elem b = 0; b < n; ++b) {
      if (!A.summable(a, b)) continue;
      for (elem x = 0; x < n; ++x) {
        elem ax = A.mul(a, x), bx = A.mul(b, x);
        if (!A.summable(ax, bx) || A.add(ax, bx) != A.mul(A.add(a, b), x)) {
          rep.items.push_back({"bilinear", {a, b, x}});
        }
      }
    }
  }
  return rep;
}

class invalid_structure : public error {
 public:
  invalid_structure(std::string what, validation_report rep)
      : error(std::move(what)), report(std::move(rep)) {}
  validation_report report;
};

inline void require_valid(const partial_magma& A, level lv,
                          const std::string& what) {
  auto rep = validate(A, lv);
  if (!rep.ok()) throw invalid_structure(what + ": " + rep.str(A), rep);
}

inline void require_valid(const partial_ring& A, const std::string& what) {
  auto rep = validate(A);
  if (!rep.ok()) throw invalid_structure(what + ": " + rep.str(A), rep);
}

// ---------------------------------------------------------------------------
// n-ary summability
//
// A multiset is summable when some (equivalently, by associativity, every)
// left fold of it is defined.  The fold below uses the given order; order
// independence over valid monoids is covered by the property suite.

inline std::optional<elem> sum_multiset(const partial_magma& A,
                                        std::span<const elem> ms) {
  elem acc = A.zero();
  for (elem x : ms) {
    auto next = A.try_add(acc, x);
    if (!next) return std::nullopt;
    acc = *next;
  }
  return acc;
}

inline std::optional<elem> sum_multiset(const partial_magma& A,
                                        std::initializer_list<elem> ms) {
  return sum_multiset(A, std::span<const elem>(ms.begin(), ms.size()));
}

inline bool multiset_summable(const partial_magma& A, std::span<const elem> ms) {
  return sum_multiset(A, ms).has_value();
}

}  // namespace pring
