// Finite presentations and the homomorphism solver that realizes their
// point functors.
//
// A presentation lists generators, a summability list S of polynomials
// whose values must be calculable, and congruence pairs Q whose values
// must be calculable and equal.  Solutions over a ring A are exactly the
// generator assignments extending to homomorphisms from the presented
// partial ring: the kernel pair of such a homomorphism is a congruence
// containing Q, hence contains the congruence Q generates, so equalizing
// the generators is both necessary and sufficient.
#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pring/base.hpp"
#include "pring/poly.hpp"
#include "pring/structures.hpp"

namespace pring {

struct presentation {
  std::vector<std::string> gens;
  std::vector<nat_poly> summable;                        // S
  std::vector<std::pair<nat_poly, nat_poly>> relations;  // Q

  std::size_t arity() const { return gens.size(); }
};

using assignment = std::vector<elem>;

struct solver_stats {
  std::size_t nodes = 0;
  std::size_t rejected_incalculable = 0;  // relation side had no value
};

namespace detail {

// Monomials regrouped by the generator that completes them.
struct staged_poly {
  std::vector<std::vector<exponent_vec>> by_depth;  // index = generator
  std::vector<exponent_vec> constants;
};

inline staged_poly stage_poly(const nat_poly& p) {
  staged_poly out;
  out.by_depth.resize(p.nvars);
  for (const auto& m : monomials(p)) {
    int last = -1;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i]) last = static_cast<int>(i);
    }
    if (last < 0) {
      out.constants.push_back(m);
    } else {
      out.by_depth[static_cast<std::size_t>(last)].push_back(m);
    }
  }
  return out;
}

inline int poly_last_var(const nat_poly& p) {
  int last = -1;
  for (const auto& [e, c] : p.terms) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i]) last = std::max(last, static_cast<int>(i));
    }
  }
  return last;
}

}  // namespace detail

// All assignments (c_1..c_n) such that every polynomial in S is calculable
// and every relation pair has equal calculable values.  Backtracking over
// generators with forward checking: the already-completed monomials of
// each summability polynomial must fold to a defined partial sum.
// Output is lexicographic in the assignment vectors.
inline std::vector<assignment> solve_homs(const presentation& P,
                                          const partial_ring& A,
                                          const budget& bgt = {},
                                          solver_stats* stats_out = nullptr) {
  require_valid(A, "solve_homs target");
  const std::size_t n = P.arity();
  solver_stats stats;

  std::vector<detail::staged_poly> staged;
  staged.reserve(P.summable.size());
  for (const auto& s : P.summable) staged.push_back(detail::stage_poly(s));

  // Relations fire at the depth where both sides are fully assigned.
  std::vector<std::vector<std::size_t>> rel_at(n ? n : 1);
  std::vector<std::size_t> rel_const;
  for (std::size_t r = 0; r < P.relations.size(); ++r) {
    int d = std::max(detail::poly_last_var(P.relations[r].first),
                     detail::poly_last_var(P.relations[r].second));
    if (d < 0) {
      rel_const.push_back(r);
    } else {
      rel_at[static_cast<std::size_t>(d)].push_back(r);
    }
  }

  // Partial sums of the summability polynomials, one snapshot per depth.
  std::vector<std::optional<elem>> sums(P.summable.size(), A.zero());
  assignment current(n, 0);
  std::vector<assignment> out;

  auto fold_monomials = [&](std::vector<std::optional<elem>>& acc,
                            std::size_t s, const std::vector<exponent_vec>& ms) {
    for (const auto& m : ms) {
      if (!acc[s]) return false;
      elem v = eval_monomial(A, m, current);
      auto next = A.try_add(*acc[s], v);
      if (!next) {
        acc[s] = std::nullopt;
        return false;
      }
      acc[s] = *next;
    }
    return true;
  };

  // Constant monomials fold before any generator is assigned.
  bool root_ok = true;
  for (std::size_t s = 0; s < staged.size(); ++s) {
    if (!fold_monomials(sums, s, staged[s].constants)) root_ok = false;
  }
  auto check_relation = [&](std::size_t r) {
    const auto& [u, v] = P.relations[r];
    if (!can_calculate(A, u, current) || !can_calculate(A, v, current)) {
      ++stats.rejected_incalculable;
      return false;
    }
    return eval_poly(A, u, current) == eval_poly(A, v, current);
  };
  for (std::size_t r : rel_const) {
    if (root_ok && !check_relation(r)) root_ok = false;
  }

  std::vector<std::vector<std::optional<elem>>> snapshots(n + 1);
  snapshots[0] = sums;

  std::function<void(std::size_t)> descend = [&](std::size_t depth) {
    if (depth == n) {
      out.push_back(current);
      return;
    }
    for (elem v = 0; v < A.size(); ++v) {
      if (++stats.nodes > bgt.max_candidates) {
        throw budget_error("solver exceeded the candidate budget", stats.nodes);
      }
      current[depth] = v;
      auto& acc = snapshots[depth + 1];
      acc = snapshots[depth];
      bool ok = true;
      for (std::size_t s = 0; s < staged.size() && ok; ++s) {
        ok = fold_monomials(acc, s, staged[s].by_depth[depth]);
      }
      for (std::size_t ri = 0; ri < rel_at[depth].size() && ok; ++ri) {
        ok = check_relation(rel_at[depth][ri]);
      }
      if (ok) descend(depth + 1);
    }
    current[depth] = 0;
  };

  if (root_ok) {
    if (n == 0) {
      out.push_back({});
    } else {
      descend(0);
    }
  }
  if (stats_out) *stats_out = stats;
  return out;
}

}  // namespace pring
