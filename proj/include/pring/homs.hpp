// Homomorphism enumeration, Hom-objects, binary products and isomorphism
// search for finite partial structures.
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "pring/base.hpp"
#include "pring/structures.hpp"

namespace pring {

// A homomorphism is stored as its value table, indexed by source element.
// Source and target are passed alongside wherever they matter.
struct hom {
  std::vector<elem> map;

  elem operator()(elem a) const { return map[a]; }
  friend bool operator==(const hom&, const hom&) = default;
  friend auto operator<=>(const hom&, const hom&) = default;
};

// g after f.
inline hom compose(const hom& f, const hom& g) {
  hom h;
  h.map.reserve(f.map.size());
  for (elem a : f.map) h.map.push_back(g.map[a]);
  return h;
}

inline hom identity_hom(const partial_magma& A) {
  hom h;
  h.map.resize(A.size());
  for (elem a = 0; a < A.size(); ++a) h.map[a] = a;
  return h;
}

inline bool is_injective(const hom& f) {
  std::vector<elem> seen;
  for (elem v : f.map) {
    if (std::find(seen.begin(), seen.end(), v) != seen.end()) return false;
    seen.push_back(v);
  }
  return true;
}

inline bool is_magma_hom(const partial_magma& A, const partial_magma& B,
                         const hom& f) {
  if (f.map.size() != A.size()) return false;
  if (f(A.zero()) != B.zero()) return false;
  for (elem a = 0; a < A.size(); ++a) {
    for (elem b = 0; b < A.size(); ++b) {
      if (!A.summable(a, b)) continue;
      if (!B.summable(f(a), f(b))) return false;
      if (B.add(f(a), f(b)) != f(A.add(a, b))) return false;
    }
  }
  return true;
}

inline bool is_ring_hom(const partial_ring& A, const partial_ring& B,
                        const hom& f) {
  if (!is_magma_hom(A, B, f)) return false;
  if (f(A.one()) != B.one()) return false;
  for (elem a = 0; a < A.size(); ++a) {
    for (elem b = 0; b < A.size(); ++b) {
      if (f(A.mul(a, b)) != B.mul(f(a), f(b))) return false;
    }
  }
  return true;
}

inline bool is_hom(const partial_magma& A, const partial_magma& B,
                   const hom& f, level lv) {
  if (lv != level::ring) return is_magma_hom(A, B, f);
  return is_ring_hom(static_cast<const partial_ring&>(A),
                     static_cast<const partial_ring&>(B), f);
}

namespace detail {

// Backtracking enumeration of value tables; constraints are checked as soon
// as both arguments are assigned, so dead prefixes are cut early.
template <typename Check, typename Emit>
void enumerate_maps(const partial_magma& A, const partial_magma& B,
                    std::vector<elem>& partial, Check&& consistent,
                    Emit&& emit, const budget& bgt, std::size_t& visited) {
  if (partial.size() == A.size()) {
    emit(partial);
    return;
  }
  for (elem v = 0; v < B.size(); ++v) {
    if (++visited > bgt.max_candidates) {
      throw budget_error("hom enumeration exceeded candidate budget", visited);
    }
    partial.push_back(v);
    if (consistent(partial)) {
      enumerate_maps(A, B, partial, consistent, emit, bgt, visited);
    }
    partial.pop_back();
  }
}

}  // namespace detail

// Exhaustive, duplicate-free list of all homomorphisms A -> B of the given
// kind, in lexicographic order of value tables.
inline std::vector<hom> enumerate_homs(const partial_magma& A,
                                       const partial_magma& B, level lv,
                                       const budget& bgt = {}) {
  const partial_ring* RA = nullptr;
  const partial_ring* RB = nullptr;
  if (lv == level::ring) {
    RA = static_cast<const partial_ring*>(&A);
    RB = static_cast<const partial_ring*>(&B);
  }

  double space = 1;
  for (std::size_t i = 0; i < A.size(); ++i) {
    space *= static_cast<double>(B.size());
    if (space > static_cast<double>(bgt.max_candidates) * 16) {
      throw budget_error("hom search space exceeds budget", A.size());
    }
  }

  auto consistent = [&](const std::vector<elem>& f) {
    elem a = static_cast<elem>(f.size() - 1);
    elem v = f.back();
    if (a == A.zero() && v != B.zero()) return false;
    if (RA && a == RA->one() && v != RB->one()) return false;
    for (elem b = 0; b < f.size(); ++b) {
      if (A.summable(a, b)) {
        elem s = A.add(a, b);
        if (!B.summable(v, f[b])) return false;
        if (s < f.size() && B.add(v, f[b]) != f[s]) return false;
      }
      if (A.summable(b, a)) {
        elem s = A.add(b, a);
        if (!B.summable(f[b], v)) return false;
        if (s < f.size() && B.add(f[b], v) != f[s]) return false;
      }
      if (RA) {
        elem p = RA->mul(a, b);
        if (p < f.size() && RB->mul(v, f[b]) != f[p]) return false;
        elem q = RA->mul(b, a);
        if (q < f.size() && RB->mul(f[b], v) != f[q]) return false;
      }
    }
    return true;
  };

  std::vector<hom> out;
  std::vector<elem> partial;
  std::size_t visited = 0;
  detail::enumerate_maps(
      A, B, partial, consistent,
      [&](const std::vector<elem>& f) {
        hom h{f};
        if (is_hom(A, B, h, lv)) out.push_back(std::move(h));
      },
      bgt, visited);
  return out;
}

// ---------------------------------------------------------------------------
// Hom-objects
//
// Hom(A, B) with (f, g) summable iff pointwise summable, sum taken
// pointwise.  B must be a partial monoid, otherwise the pointwise sum need
// not be a homomorphism.

struct hom_object_result {
  partial_magma object;     // validated partial monoid
  std::vector<hom> elems;   // carrier order of `object`
};

inline hom_object_result hom_object(const partial_magma& A,
                                    const partial_magma& B,
                                    const budget& bgt = {}) {
  require_valid(B, level::monoid, "hom_object target");
  std::vector<hom> homs = enumerate_homs(A, B, level::magma, bgt);

  std::vector<std::string> names;
  names.reserve(homs.size());
  for (const auto& f : homs) {
    std::string nm = "[";
    for (std::size_t a = 0; a < f.map.size(); ++a) {
      if (a) nm += ",";
      nm += B.name(f.map[a]);
    }
    nm += "]";
    names.push_back(std::move(nm));
  }

  // The zero hom is constant zero; it always exists.
  hom zero_hom;
  zero_hom.map.assign(A.size(), B.zero());
  auto zpos = std::find(homs.begin(), homs.end(), zero_hom);
  if (zpos == homs.end()) throw check_error("hom_object: zero hom missing");

  partial_magma H(names, static_cast<elem>(zpos - homs.begin()));
  for (elem i = 0; i < homs.size(); ++i) {
    for (elem j = 0; j < homs.size(); ++j) {
      bool ok = true;
      hom sum;
      sum.map.resize(A.size());
      for (elem a = 0; a < A.size() && ok; ++a) {
        if (!B.summable(homs[i].map[a], homs[j].map[a])) {
          ok = false;
        } else {
          sum.map[a] = B.add(homs[i].map[a], homs[j].map[a]);
        }
      }
      if (!ok) continue;
      auto pos = std::find(homs.begin(), homs.end(), sum);
      if (pos == homs.end()) {
        throw check_error("hom_object: pointwise sum is not a homomorphism");
      }
      H.set_sum(i, j, static_cast<elem>(pos - homs.begin()), false);
    }
  }
  require_valid(H, level::monoid, "hom_object result");
  return {std::move(H), std::move(homs)};
}

// ---------------------------------------------------------------------------
// Binary products, componentwise.

inline elem pair_index(const partial_magma& B, elem a, elem b) {
  return static_cast<elem>(a * B.size() + b);
}

inline partial_magma product_magma(const partial_magma& A,
                                   const partial_magma& B) {
  std::vector<std::string> names;
  names.reserve(A.size() * B.size());
  for (elem a = 0; a < A.size(); ++a) {
    for (elem b = 0; b < B.size(); ++b) {
      names.push_back("(" + A.name(a) + "," + B.name(b) + ")");
    }
  }
  partial_magma P(names, pair_index(B, A.zero(), B.zero()));
  for (elem a1 = 0; a1 < A.size(); ++a1) {
    for (elem b1 = 0; b1 < B.size(); ++b1) {
      for (elem a2 = 0; a2 < A.size(); ++a2) {
        for (elem b2 = 0; b2 < B.size(); ++b2) {
          if (A.summable(a1, a2) && B.summable(b1, b2)) {
            P.set_sum(pair_index(B, a1, b1), pair_index(B, a2, b2),
                      pair_index(B, A.add(a1, a2), B.add(b1, b2)), false);
          }
        }
      }
    }
  }
  return P;
}

inline partial_ring product_ring(const partial_ring& A, const partial_ring& B) {
  partial_ring P(product_magma(A, B), pair_index(B, A.one(), B.one()));
  for (elem a1 = 0; a1 < A.size(); ++a1) {
    for (elem b1 = 0; b1 < B.size(); ++b1) {
      for (elem a2 = 0; a2 < A.size(); ++a2) {
        for (elem b2 = 0; b2 < B.size(); ++b2) {
          P.set_mul(pair_index(B, a1, b1), pair_index(B, a2, b2),
                    pair_index(B, A.mul(a1, a2), B.mul(b1, b2)), false);
        }
      }
    }
  }
  return P;
}

inline hom projection_hom(const partial_magma& A, const partial_magma& B,
                          bool first) {
  hom h;
  h.map.reserve(A.size() * B.size());
  for (elem a = 0; a < A.size(); ++a) {
    for (elem b = 0; b < B.size(); ++b) {
      h.map.push_back(first ? a : b);
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Isomorphism search (backtracking with degree invariants).

namespace detail {

inline std::vector<std::size_t> summable_degrees(const partial_magma& A) {
  std::vector<std::size_t> d(A.size(), 0);
  for (elem a = 0; a < A.size(); ++a) {
    for (elem b = 0; b < A.size(); ++b) {
      if (A.summable(a, b)) ++d[a];
    }
  }
  return d;
}

inline bool iso_leaf_ok(const partial_magma& A, const partial_magma& B,
                        const partial_ring* RA, const partial_ring*,
                        const std::vector<elem>& f) {
  hom fwd{f};
  if (!is_injective(fwd)) return false;
  hom inv;
  inv.map.resize(B.size());
  for (elem a = 0; a < A.size(); ++a) inv.map[f[a]] = a;
  level lv = RA ? level::ring : level::magma;
  return is_hom(A, B, fwd, lv) && is_hom(B, A, inv, lv);
}

inline bool iso_extend(const partial_magma& A, const partial_magma& B,
                       const partial_ring* RA, const partial_ring* RB,
                       std::vector<elem>& f, std::vector<bool>& used,
                       const std::vector<std::size_t>& dA,
                       const std::vector<std::size_t>& dB) {
  elem a = static_cast<elem>(f.size());
  if (a == A.size()) return iso_leaf_ok(A, B, RA, RB, f);
  for (elem v = 0; v < B.size(); ++v) {
    if (used[v] || dA[a] != dB[v]) continue;
    if ((a == A.zero()) != (v == B.zero())) continue;
    if (RA && (a == RA->one()) != (v == RB->one())) continue;
    // Prune on constraints whose participants are all assigned; anything
    // deferred is re-verified at the leaf.
    bool ok = true;
    for (elem b = 0; b <= a && ok; ++b) {
      elem fb = (b == a) ? v : f[b];
      auto chk = [&](elem x, elem y, elem fx, elem fy) {
        if (A.summable(x, y) != B.summable(fx, fy)) return false;
        if (A.summable(x, y)) {
          elem s = A.add(x, y);
          elem fs = (s == a) ? v : (s < f.size() ? f[s] : undef);
          if (fs != undef && B.add(fx, fy) != fs) return false;
        }
        return true;
      };
      ok = chk(a, b, v, fb) && chk(b, a, fb, v);
      if (ok && RA) {
        elem p = RA->mul(a, b);
        elem fp = (p == a) ? v : (p < f.size() ? f[p] : undef);
        if (fp != undef && RB->mul(v, fb) != fp) ok = false;
      }
    }
    if (!ok) continue;
    f.push_back(v);
    used[v] = true;
    if (iso_extend(A, B, RA, RB, f, used, dA, dB)) return true;
    used[v] = false;
    f.pop_back();
  }
  return false;
}

}  // namespace detail

inline std::optional<hom> find_isomorphism(const partial_magma& A,
                                           const partial_magma& B, level lv) {
  if (A.size() != B.size()) return std::nullopt;
  auto dA = detail::summable_degrees(A);
  auto dB = detail::summable_degrees(B);
  {
    auto sa = dA, sb = dB;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  const partial_ring* RA = nullptr;
  const partial_ring* RB = nullptr;
  if (lv == level::ring) {
    RA = static_cast<const partial_ring*>(&A);
    RB = static_cast<const partial_ring*>(&B);
  }
  std::vector<elem> f;
  std::vector<bool> used(B.size(), false);
  if (!detail::iso_extend(A, B, RA, RB, f, used, dA, dB)) return std::nullopt;
  return hom{f};
}

inline bool is_isomorphic(const partial_magma& A, const partial_magma& B,
                          level lv) {
  return find_isomorphism(A, B, lv).has_value();
}

}  // namespace pring
