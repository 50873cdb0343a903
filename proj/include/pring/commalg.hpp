// Commutative algebra over finite partial rings: ideals, primes, radicals,
// localization, local rings, partial fields and the goodness predicate.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pring/base.hpp"
#include "pring/homs.hpp"
#include "pring/structures.hpp"

namespace pring {

// A subset of the carrier, sorted and unique.
struct ideal {
  std::vector<elem> elems;

  bool contains(elem e) const {
    return std::binary_search(elems.begin(), elems.end(), e);
  }
  std::size_t size() const { return elems.size(); }

  friend bool operator==(const ideal&, const ideal&) = default;
  friend auto operator<=>(const ideal&, const ideal&) = default;
};

inline ideal make_ideal_set(std::vector<elem> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return ideal{std::move(elems)};
}

// Contains 0, closed under defined sums, absorbs multiplication.
inline bool is_ideal(const partial_ring& A, const ideal& I) {
  if (!I.contains(A.zero())) return false;
  for (elem x : I.elems) {
    for (elem y : I.elems) {
      if (A.summable(x, y) && !I.contains(A.add(x, y))) return false;
    }
    for (elem a = 0; a < A.size(); ++a) {
      if (!I.contains(A.mul(a, x))) return false;
    }
  }
  return true;
}

// Least ideal containing T: all products a*t, closed under defined sums
// with further products.  Folding a summable multiset visits only defined
// intermediate sums, so binary closure reaches every multiset sum.
inline ideal ideal_generated(const partial_ring& A,
                             const std::vector<elem>& T) {
  std::set<elem> products;
  for (elem t : T) {
    for (elem a = 0; a < A.size(); ++a) products.insert(A.mul(a, t));
  }
  std::set<elem> closure{A.zero()};
  for (elem p : products) closure.insert(p);
  bool changed = true;
  while (changed) {
    changed = false;
    for (elem x : std::vector<elem>(closure.begin(), closure.end())) {
      for (elem p : products) {
        if (A.summable(x, p) && closure.insert(A.add(x, p)).second) {
          changed = true;
        }
      }
    }
  }
  return make_ideal_set({closure.begin(), closure.end()});
}

inline ideal zero_ideal(const partial_ring& A) {
  return make_ideal_set({A.zero()});
}

inline ideal unit_ideal(const partial_ring& A) {
  std::vector<elem> all(A.size());
  for (elem a = 0; a < A.size(); ++a) all[a] = a;
  return make_ideal_set(std::move(all));
}

inline ideal ideal_sum(const partial_ring& A, const ideal& I, const ideal& J) {
  std::vector<elem> gens = I.elems;
  gens.insert(gens.end(), J.elems.begin(), J.elems.end());
  return ideal_generated(A, gens);
}

// Defined sums of pairwise products.
inline ideal ideal_product(const partial_ring& A, const ideal& I,
                           const ideal& J) {
  std::set<elem> products;
  for (elem x : I.elems) {
    for (elem y : J.elems) products.insert(A.mul(x, y));
  }
  std::set<elem> closure{A.zero()};
  for (elem p : products) closure.insert(p);
  bool changed = true;
  while (changed) {
    changed = false;
    for (elem x : std::vector<elem>(closure.begin(), closure.end())) {
      for (elem p : products) {
        if (A.summable(x, p) && closure.insert(A.add(x, p)).second) {
          changed = true;
        }
      }
    }
  }
  ideal out = make_ideal_set({closure.begin(), closure.end()});
  if (!is_ideal(A, out)) {
    throw check_error("ideal_product result is not an ideal");
  }
  return out;
}

inline ideal pullback_ideal(const partial_ring& A, const partial_ring& /*B*/,
                            const hom& phi, const ideal& J) {
  std::vector<elem> pre;
  for (elem a = 0; a < A.size(); ++a) {
    if (J.contains(phi(a))) pre.push_back(a);
  }
  ideal out = make_ideal_set(std::move(pre));
  if (!is_ideal(A, out)) {
    throw check_error("pullback of an ideal is not an ideal");
  }
  return out;
}

inline ideal pushforward_ideal(const partial_ring& /*A*/, const partial_ring& B,
                               const hom& phi, const ideal& I) {
  std::vector<elem> image;
  for (elem x : I.elems) image.push_back(phi(x));
  return ideal_generated(B, image);
}

// ---------------------------------------------------------------------------
// Ideal and prime enumeration.
//
// Ideals are enumerated as the closure lattice: every ideal is reachable
// from (0) by repeatedly adjoining one element and closing.  This avoids
// scanning all 2^|A| subsets.

inline std::vector<ideal> all_ideals(const partial_ring& A,
                                     const budget& bgt = {}) {
  std::set<ideal> seen;
  std::vector<ideal> work{ideal_generated(A, {})};
  seen.insert(work.front());
  while (!work.empty()) {
    ideal I = std::move(work.back());
    work.pop_back();
    for (elem x = 0; x < A.size(); ++x) {
      if (I.contains(x)) continue;
      std::vector<elem> gens = I.elems;
      gens.push_back(x);
      ideal J = ideal_generated(A, gens);
      if (seen.insert(J).second) {
        if (seen.size() > bgt.max_candidates) {
          throw budget_error("ideal enumeration exceeded budget", seen.size());
        }
        work.push_back(std::move(J));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

inline bool is_prime(const partial_ring& A, const ideal& I) {
  if (!is_ideal(A, I)) return false;
  if (I.size() == A.size()) return false;  // proper
  for (elem a = 0; a < A.size(); ++a) {
    if (I.contains(a)) continue;
    for (elem b = 0; b < A.size(); ++b) {
      if (I.contains(b)) continue;
      if (I.contains(A.mul(a, b))) return false;
    }
  }
  return true;
}

inline std::vector<ideal> primes(const partial_ring& A, const budget& bgt = {}) {
  std::vector<ideal> out;
  for (const auto& I : all_ideals(A, bgt)) {
    if (is_prime(A, I)) out.push_back(I);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Radical by power membership.  Powers cycle within |A| steps, so the
// exponent scan is complete.
inline ideal radical(const partial_ring& A, const ideal& I) {
  if (I.size() == A.size()) return unit_ideal(A);
  std::vector<elem> out;
  for (elem a = 0; a < A.size(); ++a) {
    elem p = a;
    for (std::size_t r = 1; r <= A.size() + 1; ++r) {
      if (I.contains(p)) {
        out.push_back(a);
        break;
      }
      p = A.mul(p, a);
    }
  }
  return make_ideal_set(std::move(out));
}

// Radical as the intersection of the primes containing I; the independent
// route for the corollary test.  Empty intersection means the whole ring.
inline ideal radical_by_primes(const partial_ring& A, const ideal& I,
                               const budget& bgt = {}) {
  std::vector<elem> inter;
  bool any = false;
  for (const auto& p : primes(A, bgt)) {
    if (!std::includes(p.elems.begin(), p.elems.end(), I.elems.begin(),
                       I.elems.end())) {
      continue;
    }
    if (!any) {
      inter = p.elems;
      any = true;
    } else {
      std::vector<elem> next;
      std::set_intersection(inter.begin(), inter.end(), p.elems.begin(),
                            p.elems.end(), std::back_inserter(next));
      inter = std::move(next);
    }
  }
  if (!any) return unit_ideal(A);
  return make_ideal_set(std::move(inter));
}

// ---------------------------------------------------------------------------
// Localization.

inline bool is_multiplicative_set(const partial_ring& A,
                                  const std::vector<elem>& S) {
  if (std::find(S.begin(), S.end(), A.one()) == S.end()) return false;
  for (elem s : S) {
    for (elem t : S) {
      if (std::find(S.begin(), S.end(), A.mul(s, t)) == S.end()) return false;
    }
  }
  return true;
}

struct localized_ring {
  partial_ring ring;
  hom lambda;                        // A -> ring
  std::vector<elem> mult_set;        // S, sorted
  std::vector<std::vector<elem>> cls;  // [a][S-position] -> ring element

  elem frac(elem a, elem s) const {
    auto it = std::lower_bound(mult_set.begin(), mult_set.end(), s);
    if (it == mult_set.end() || *it != s) {
      throw error("frac: denominator is not in the multiplicative set");
    }
    return cls[a][static_cast<std::size_t>(it - mult_set.begin())];
  }
};

// Fractions a/s with a/s = b/t iff uta = usb for some u in S; a pair of
// fractions is summable iff (uta, usb) is summable for some u in S.
inline localized_ring localize(const partial_ring& A, std::vector<elem> S) {
  require_valid(A, "localize input");
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  if (!is_multiplicative_set(A, S)) {
    throw error("localize: set is not multiplicative or misses 1");
  }

  const std::size_t ns = S.size();
  auto pair_id = [&](elem a, std::size_t si) { return a * ns + si; };

  // Union-find over (a, s) pairs.
  std::vector<std::size_t> parent(A.size() * ns);
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  };
  for (elem a = 0; a < A.size(); ++a) {
    for (std::size_t si = 0; si < ns; ++si) {
      for (elem b = 0; b < A.size(); ++b) {
        for (std::size_t ti = 0; ti < ns; ++ti) {
          for (elem u : S) {
            if (A.mul(A.mul(u, S[ti]), a) == A.mul(A.mul(u, S[si]), b)) {
              unite(pair_id(a, si), pair_id(b, ti));
              break;
            }
          }
        }
      }
    }
  }

  // Number classes by first appearance in (a, s) scan order.
  std::map<std::size_t, elem> root_to_class;
  std::vector<std::pair<elem, std::size_t>> rep;  // class -> (a, si)
  std::vector<std::vector<elem>> cls(A.size(), std::vector<elem>(ns));
  for (elem a = 0; a < A.size(); ++a) {
    for (std::size_t si = 0; si < ns; ++si) {
      std::size_t r = find(pair_id(a, si));
      auto it = root_to_class.find(r);
      if (it == root_to_class.end()) {
        it = root_to_class.emplace(r, static_cast<elem>(rep.size())).first;
        rep.emplace_back(a, si);
      }
      cls[a][si] = it->second;
    }
  }

  const std::size_t n = rep.size();
  std::vector<std::string> names;
  names.reserve(n);
  for (auto [a, si] : rep) names.push_back(A.name(a) + "/" + A.name(S[si]));

  // Summability: quantified over all representatives and witnesses.
  std::size_t one_pos =
      static_cast<std::size_t>(std::lower_bound(S.begin(), S.end(), A.one()) -
                               S.begin());
  partial_magma m(names, cls[A.zero()][one_pos]);
  std::vector<std::vector<std::pair<elem, elem>>> members(n);
  for (elem a = 0; a < A.size(); ++a) {
    for (std::size_t si = 0; si < ns; ++si) {
      members[cls[a][si]].emplace_back(a, S[si]);
    }
  }
  for (elem c1 = 0; c1 < n; ++c1) {
    for (elem c2 = c1; c2 < n; ++c2) {
      bool done = false;
      for (auto [a, s] : members[c1]) {
        for (auto [b, t] : members[c2]) {
          for (elem u : S) {
            elem uta = A.mul(A.mul(u, t), a);
            elem usb = A.mul(A.mul(u, s), b);
            if (!A.summable(uta, usb)) continue;
            elem num = A.add(uta, usb);
            elem den = A.mul(A.mul(u, t), s);
            auto dit = std::lower_bound(S.begin(), S.end(), den);
            if (dit == S.end() || *dit != den) {
              throw check_error("localize: denominator escaped S");
            }
            elem sum = cls[num][static_cast<std::size_t>(dit - S.begin())];
            m.set_sum(c1, c2, sum);
            done = true;
            break;
          }
          if (done) break;
        }
        if (done) break;
      }
    }
  }

  partial_ring R(std::move(m), cls[A.one()][one_pos]);
  for (elem c1 = 0; c1 < n; ++c1) {
    for (elem c2 = c1; c2 < n; ++c2) {
      auto [a, si] = rep[c1];
      auto [b, ti] = rep[c2];
      elem num = A.mul(a, b);
      elem den = A.mul(S[si], S[ti]);
      auto dit = std::lower_bound(S.begin(), S.end(), den);
      R.set_mul(c1, c2, cls[num][static_cast<std::size_t>(dit - S.begin())]);
    }
  }
  require_valid(R, "localized ring");

  localized_ring out;
  out.lambda.map.resize(A.size());
  for (elem a = 0; a < A.size(); ++a) out.lambda.map[a] = cls[a][one_pos];
  out.ring = std::move(R);
  out.mult_set = std::move(S);
  out.cls = std::move(cls);
  if (!is_ring_hom(A, out.ring, out.lambda)) {
    throw check_error("localize: lambda is not a ring homomorphism");
  }
  return out;
}

inline localized_ring localize_at_prime(const partial_ring& A, const ideal& p) {
  std::vector<elem> S;
  for (elem a = 0; a < A.size(); ++a) {
    if (!p.contains(a)) S.push_back(a);
  }
  return localize(A, std::move(S));
}

// ---------------------------------------------------------------------------
// Local rings, partial fields, goodness.

inline std::vector<ideal> maximal_ideals(const partial_ring& A,
                                         const budget& bgt = {}) {
  auto ideals = all_ideals(A, bgt);
  std::vector<ideal> proper;
  for (auto& I : ideals) {
    if (I.size() < A.size()) proper.push_back(I);
  }
  std::vector<ideal> out;
  for (const auto& I : proper) {
    bool maximal = true;
    for (const auto& J : proper) {
      if (I.size() < J.size() &&
          std::includes(J.elems.begin(), J.elems.end(), I.elems.begin(),
                        I.elems.end())) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(I);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// The unique maximal ideal, if there is exactly one.
inline std::optional<ideal> is_local(const partial_ring& A,
                                     const budget& bgt = {}) {
  auto maxes = maximal_ideals(A, bgt);
  if (maxes.size() == 1) return maxes.front();
  return std::nullopt;
}

inline bool is_partial_field(const partial_ring& A) {
  if (A.size() < 2) return false;  // the zero ring has no proper ideals
  for (elem a = 0; a < A.size(); ++a) {
    if (a != A.zero() && !A.is_unit(a)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Summable tuples A_n and the scaled variant A_(n).

inline std::vector<std::vector<elem>> summable_tuples(const partial_ring& A,
                                                      std::size_t n,
                                                      const budget& bgt = {}) {
  double space = 1;
  for (std::size_t i = 0; i < n; ++i) {
    space *= static_cast<double>(A.size());
    if (space > static_cast<double>(bgt.max_candidates)) {
      throw budget_error("summable tuple space exceeds budget", n);
    }
  }
  std::vector<std::vector<elem>> out;
  std::vector<elem> t(n, 0);
  while (true) {
    if (multiset_summable(A, t)) out.push_back(t);
    std::size_t k = 0;
    while (k < n && ++t[k] == A.size()) t[k++] = 0;
    if (k == n) break;
  }
  return out;
}

// Tuples that stay summable under every coordinatewise scaling.
inline std::vector<std::vector<elem>> strongly_summable(const partial_ring& A,
                                                        std::size_t n,
                                                        const budget& bgt = {}) {
  auto base = summable_tuples(A, n, bgt);
  std::vector<std::vector<elem>> out;
  std::vector<elem> scaled(n);
  for (const auto& t : base) {
    bool good = true;
    std::vector<elem> s(n, 0);
    while (good) {
      for (std::size_t i = 0; i < n; ++i) scaled[i] = A.mul(s[i], t[i]);
      if (!multiset_summable(A, scaled)) {
        good = false;
        break;
      }
      std::size_t k = 0;
      while (k < n && ++s[k] == A.size()) s[k++] = 0;
      if (k == n) break;
    }
    if (good) out.push_back(t);
  }
  return out;
}

inline bool is_good(const partial_ring& A, std::size_t n,
                    const budget& bgt = {}) {
  return summable_tuples(A, n, bgt) == strongly_summable(A, n, bgt);
}

}  // namespace pring
