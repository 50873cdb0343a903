// Linear algebra over partial rings and the group-valued point functors:
// matrices with summable rows, the partial group GL'_n, the additive,
// multiplicative and general-linear presentations, and evaluation of their
// points with the induced (partial) group structure.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pring/base.hpp"
#include "pring/commalg.hpp"
#include "pring/poly.hpp"
#include "pring/solve.hpp"
#include "pring/structures.hpp"

namespace pring {

// Row-major matrix over a ring carrier.
struct pmatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<elem> e;

  elem at(std::size_t i, std::size_t j) const { return e[i * cols + j]; }
  elem& at(std::size_t i, std::size_t j) { return e[i * cols + j]; }

  friend bool operator==(const pmatrix&, const pmatrix&) = default;
};

inline pmatrix identity_matrix(const partial_ring& A, std::size_t n) {
  pmatrix m{n, n, std::vector<elem>(n * n, A.zero())};
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = A.one();
  return m;
}

inline bool rows_summable(const partial_ring& A, const pmatrix& m) {
  for (std::size_t i = 0; i < m.rows; ++i) {
    std::vector<elem> row(m.e.begin() + static_cast<std::ptrdiff_t>(i * m.cols),
                          m.e.begin() + static_cast<std::ptrdiff_t>((i + 1) * m.cols));
    if (!multiset_summable(A, row)) return false;
  }
  return true;
}

// Defined iff every entry's product multiset is summable and the result
// again has summable rows; the value is the usual matrix product.
inline std::optional<pmatrix> mat_mul(const partial_ring& A, const pmatrix& c,
                                      const pmatrix& d) {
  if (c.cols != d.rows) throw error("mat_mul: shape mismatch");
  pmatrix out{c.rows, d.cols, std::vector<elem>(c.rows * d.cols, A.zero())};
  std::vector<elem> terms(c.cols);
  for (std::size_t i = 0; i < c.rows; ++i) {
    for (std::size_t j = 0; j < d.cols; ++j) {
      for (std::size_t k = 0; k < c.cols; ++k) {
        terms[k] = A.mul(c.at(i, k), d.at(k, j));
      }
      auto s = sum_multiset(A, terms);
      if (!s) return std::nullopt;
      out.at(i, j) = *s;
    }
  }
  if (!rows_summable(A, out)) return std::nullopt;
  return out;
}

// ---------------------------------------------------------------------------
// Evaluated (partial) groups.

struct point_group {
  std::vector<std::vector<elem>> elements;  // flat data per element
  std::size_t unit = 0;
  std::vector<std::size_t> inverse;         // one witness per element
  std::vector<std::vector<std::size_t>> inverse_witnesses;
  // product[i][j]: index of the product when defined.
  std::vector<std::vector<std::optional<std::size_t>>> product;

  std::size_t order() const { return elements.size(); }

  double undefined_fraction() const {
    if (elements.empty()) return 0.0;
    std::size_t undefined = 0;
    for (const auto& row : product) {
      for (const auto& p : row) undefined += !p.has_value();
    }
    return static_cast<double>(undefined) /
           static_cast<double>(elements.size() * elements.size());
  }

  std::optional<std::size_t> find(const std::vector<elem>& data) const {
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (elements[i] == data) return i;
    }
    return std::nullopt;
  }
};

// Unit products defined and trivial on both sides; every element has a
// two-sided inverse with defined products.
inline bool is_partial_group(const point_group& g) {
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (g.product[g.unit][i] != i) return false;
    if (g.product[i][g.unit] != i) return false;
    bool has_inverse = false;
    for (std::size_t j = 0; j < g.order() && !has_inverse; ++j) {
      has_inverse = g.product[i][j] == g.unit && g.product[j][i] == g.unit;
    }
    if (!has_inverse) return false;
  }
  return true;
}

inline bool is_group(const point_group& g) {
  if (!is_partial_group(g)) return false;
  for (std::size_t i = 0; i < g.order(); ++i) {
    for (std::size_t j = 0; j < g.order(); ++j) {
      if (!g.product[i][j]) return false;
      for (std::size_t k = 0; k < g.order(); ++k) {
        auto left = g.product[*g.product[i][j]][k];
        auto right = g.product[i][*g.product[j][k]];
        if (left != right) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// GL' by direct matrix enumeration.

inline std::vector<pmatrix> all_row_summable_matrices(const partial_ring& A,
                                                      std::size_t n,
                                                      const budget& bgt = {}) {
  auto rows = summable_tuples(A, n, bgt);
  double space = 1;
  for (std::size_t i = 0; i < n; ++i) {
    space *= static_cast<double>(rows.size());
    if (space > static_cast<double>(bgt.max_candidates)) {
      throw budget_error("matrix space exceeds budget", rows.size());
    }
  }
  std::vector<pmatrix> out;
  std::vector<std::size_t> pick(n, 0);
  for (;;) {
    pmatrix m{n, n, {}};
    m.e.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      m.e.insert(m.e.end(), rows[pick[i]].begin(), rows[pick[i]].end());
    }
    out.push_back(std::move(m));
    std::size_t i = 0;
    while (i < n && ++pick[i] == rows.size()) pick[i++] = 0;
    if (i == n) break;
  }
  return out;
}

// Matrices admitting a two-sided inverse with formable products; the
// product is matrix multiplication where it is defined and stays inside.
inline point_group gl_prime(const partial_ring& A, std::size_t n,
                            const budget& bgt = {}) {
  require_valid(A, "gl_prime input");
  auto all = all_row_summable_matrices(A, n, bgt);
  pmatrix id = identity_matrix(A, n);

  std::vector<pmatrix> elems;
  std::vector<std::vector<std::size_t>> wit_sets;
  std::vector<std::vector<std::size_t>> wit_positions;  // into `all`
  for (const auto& c : all) {
    std::vector<std::size_t> wits;
    for (std::size_t j = 0; j < all.size(); ++j) {
      auto cd = mat_mul(A, c, all[j]);
      if (!cd || !(*cd == id)) continue;
      auto dc = mat_mul(A, all[j], c);
      if (!dc || !(*dc == id)) continue;
      wits.push_back(j);
    }
    if (!wits.empty()) {
      elems.push_back(c);
      wit_positions.push_back(std::move(wits));
    }
  }

  point_group g;
  for (const auto& m : elems) g.elements.push_back(m.e);
  auto unit = g.find(id.e);
  if (!unit) throw check_error("gl_prime: identity matrix is not invertible");
  g.unit = *unit;

  for (std::size_t i = 0; i < elems.size(); ++i) {
    std::vector<std::size_t> wits;
    for (std::size_t pos : wit_positions[i]) {
      if (auto k = g.find(all[pos].e)) wits.push_back(*k);
    }
    if (wits.empty()) {
      throw check_error("gl_prime: inverse witness is not itself invertible");
    }
    g.inverse_witnesses.push_back(wits);
    g.inverse.push_back(wits.front());
  }

  g.product.assign(elems.size(), std::vector<std::optional<std::size_t>>(
                                     elems.size(), std::nullopt));
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j < elems.size(); ++j) {
      auto p = mat_mul(A, elems[i], elems[j]);
      if (p) g.product[i][j] = g.find(p->e);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Presentations.

inline presentation ga_presentation() {
  presentation P;
  P.gens = {"x", "y"};
  nat_poly s = poly_add(poly_var(2, 0), poly_var(2, 1));
  P.summable = {s};
  P.relations = {{s, poly_constant(2, 0)}};
  return P;
}

inline presentation gm_presentation() {
  presentation P;
  P.gens = {"x", "y"};
  P.relations = {{poly_mul(poly_var(2, 0), poly_var(2, 1)),
                  poly_constant(2, 1)}};
  return P;
}

namespace detail {

using poly_matrix = std::vector<std::vector<nat_poly>>;

inline poly_matrix var_matrix(std::size_t nvars, std::size_t n,
                              std::size_t base) {
  poly_matrix m(n, std::vector<nat_poly>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = poly_var(nvars, base + i * n + j);
    }
  }
  return m;
}

inline poly_matrix poly_mat_mul(const poly_matrix& a, const poly_matrix& b) {
  std::size_t n = a.size();
  std::size_t nvars = a[0][0].nvars;
  poly_matrix out(n, std::vector<nat_poly>(n, poly_constant(nvars, 0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        out[i][j] = poly_add(out[i][j], poly_mul(a[i][k], b[k][j]));
      }
    }
  }
  return out;
}

inline nat_poly row_sum(const poly_matrix& m, std::size_t i) {
  nat_poly s = poly_constant(m[0][0].nvars, 0);
  for (std::size_t j = 0; j < m.size(); ++j) s = poly_add(s, m[i][j]);
  return s;
}

inline void matrix_names(std::vector<std::string>& names, const char* stem,
                         std::size_t n) {
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      names.push_back(stem + std::to_string(i) + std::to_string(j));
    }
  }
}

inline void delta_relations(presentation& P, const poly_matrix& m,
                            std::size_t nvars) {
  std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      P.relations.push_back({m[i][j], poly_constant(nvars, i == j ? 1 : 0)});
    }
  }
}

}  // namespace detail

// Generators x_ij, y_ij; the row sums of X, Y, XY and YX must be
// calculable and XY = YX = I.
inline presentation gln_presentation(std::size_t n) {
  if (n < 1 || n > 9) throw error("gln_presentation: n out of range");
  const std::size_t nvars = 2 * n * n;
  presentation P;
  detail::matrix_names(P.gens, "x", n);
  detail::matrix_names(P.gens, "y", n);
  auto X = detail::var_matrix(nvars, n, 0);
  auto Y = detail::var_matrix(nvars, n, n * n);
  auto Z = detail::poly_mat_mul(X, Y);
  auto W = detail::poly_mat_mul(Y, X);
  for (const auto* m : {&X, &Y, &Z, &W}) {
    for (std::size_t i = 0; i < n; ++i) {
      P.summable.push_back(detail::row_sum(*m, i));
    }
  }
  detail::delta_relations(P, Z, nvars);
  detail::delta_relations(P, W, nvars);
  return P;
}

// The pair presentation deciding when two points can be multiplied:
// generators for (X, Y) and (X', Y'), row sums of all twelve derived
// matrices calculable, and XY, YX, X'Y', Y'X', (XX')(Y'Y), (Y'Y)(XX')
// all equal to the identity.
inline presentation gln_pair_presentation(std::size_t n) {
  if (n < 1 || n > 9) throw error("gln_pair_presentation: n out of range");
  const std::size_t nn = n * n;
  const std::size_t nvars = 4 * nn;
  presentation P;
  detail::matrix_names(P.gens, "x", n);
  detail::matrix_names(P.gens, "y", n);
  detail::matrix_names(P.gens, "xp", n);
  detail::matrix_names(P.gens, "yp", n);
  auto X = detail::var_matrix(nvars, n, 0);
  auto Y = detail::var_matrix(nvars, n, nn);
  auto Xp = detail::var_matrix(nvars, n, 2 * nn);
  auto Yp = detail::var_matrix(nvars, n, 3 * nn);
  auto Z = detail::poly_mat_mul(X, Y);
  auto W = detail::poly_mat_mul(Y, X);
  auto Zp = detail::poly_mat_mul(Xp, Yp);
  auto Wp = detail::poly_mat_mul(Yp, Xp);
  auto S = detail::poly_mat_mul(X, Xp);
  auto T = detail::poly_mat_mul(Yp, Y);
  auto U = detail::poly_mat_mul(S, T);
  auto V = detail::poly_mat_mul(T, S);
  for (const auto* m : {&X, &Y, &Z, &W, &Xp, &Yp, &Zp, &Wp, &S, &T, &U, &V}) {
    for (std::size_t i = 0; i < n; ++i) {
      P.summable.push_back(detail::row_sum(*m, i));
    }
  }
  detail::delta_relations(P, Z, nvars);
  detail::delta_relations(P, W, nvars);
  detail::delta_relations(P, Zp, nvars);
  detail::delta_relations(P, Wp, nvars);
  detail::delta_relations(P, U, nvars);
  detail::delta_relations(P, V, nvars);
  return P;
}

// ---------------------------------------------------------------------------
// Point functors.

enum class group_kind { ga, gm, gln };

namespace detail {

inline bool pair_satisfies(const partial_ring& A, const presentation& H,
                           const std::vector<elem>& combined) {
  for (const auto& s : H.summable) {
    if (!can_calculate(A, s, combined)) return false;
  }
  for (const auto& [u, v] : H.relations) {
    if (!can_calculate(A, u, combined) || !can_calculate(A, v, combined)) {
      return false;
    }
    if (eval_poly(A, u, combined) != eval_poly(A, v, combined)) return false;
  }
  return true;
}

inline pmatrix slice_matrix(const std::vector<elem>& data, std::size_t n,
                            std::size_t offset) {
  pmatrix m{n, n, std::vector<elem>(data.begin() + static_cast<std::ptrdiff_t>(offset),
                                    data.begin() + static_cast<std::ptrdiff_t>(offset + n * n))};
  return m;
}

}  // namespace detail

// Elements are the solutions of the presentation; the group structure
// comes from the comultiplication: pointwise sum for the additive group,
// multiplication for the multiplicative group, and (X,Y)(X',Y') =
// (XX', Y'Y) for the general linear group, with definedness decided by
// the pair presentation.
inline point_group evaluate_group(group_kind kind, std::size_t n,
                                  const partial_ring& A,
                                  const budget& bgt = {},
                                  solver_stats* stats = nullptr) {
  point_group g;
  if (kind == group_kind::ga || kind == group_kind::gm) {
    auto P = kind == group_kind::ga ? ga_presentation() : gm_presentation();
    for (auto& sol : solve_homs(P, A, bgt, stats)) g.elements.push_back(sol);
    elem e0 = kind == group_kind::ga ? A.zero() : A.one();
    auto unit = g.find({e0, e0});
    if (!unit) throw check_error("evaluate_group: unit point missing");
    g.unit = *unit;
    const std::size_t m = g.order();
    g.product.assign(m, std::vector<std::optional<std::size_t>>(m, std::nullopt));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        elem a = g.elements[i][0], a2 = g.elements[i][1];
        elem b = g.elements[j][0], b2 = g.elements[j][1];
        if (kind == group_kind::gm) {
          g.product[i][j] = g.find({A.mul(a, b), A.mul(a2, b2)});
        } else if (A.summable(a, b)) {
          // With inverses present, summability of the first coordinates
          // already makes the whole rearrangement calculable.
          if (!A.summable(a2, b2)) {
            throw check_error("evaluate_group: paired sum undefined");
          }
          g.product[i][j] = g.find({A.add(a, b), A.add(a2, b2)});
        }
      }
    }
    g.inverse.resize(m);
    g.inverse_witnesses.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      auto inv = g.find({g.elements[i][1], g.elements[i][0]});
      if (!inv) throw check_error("evaluate_group: swapped point missing");
      g.inverse[i] = *inv;
      g.inverse_witnesses[i] = {*inv};
    }
    return g;
  }

  auto P = gln_presentation(n);
  auto H = gln_pair_presentation(n);
  for (auto& sol : solve_homs(P, A, bgt, stats)) g.elements.push_back(sol);
  const std::size_t nn = n * n;
  std::vector<elem> unit_data;
  {
    pmatrix id = identity_matrix(A, n);
    unit_data = id.e;
    unit_data.insert(unit_data.end(), id.e.begin(), id.e.end());
  }
  auto unit = g.find(unit_data);
  if (!unit) throw check_error("evaluate_group: identity point missing");
  g.unit = *unit;

  const std::size_t m = g.order();
  g.product.assign(m, std::vector<std::optional<std::size_t>>(m, std::nullopt));
  std::vector<elem> combined(4 * nn);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      std::copy(g.elements[i].begin(), g.elements[i].end(), combined.begin());
      std::copy(g.elements[j].begin(), g.elements[j].end(),
                combined.begin() + static_cast<std::ptrdiff_t>(2 * nn));
      if (!detail::pair_satisfies(A, H, combined)) continue;
      auto X = detail::slice_matrix(g.elements[i], n, 0);
      auto Y = detail::slice_matrix(g.elements[i], n, nn);
      auto Xp = detail::slice_matrix(g.elements[j], n, 0);
      auto Yp = detail::slice_matrix(g.elements[j], n, nn);
      auto S = mat_mul(A, X, Xp);
      auto T = mat_mul(A, Yp, Y);
      if (!S || !T) {
        throw check_error("evaluate_group: product matrices undefined");
      }
      std::vector<elem> data = S->e;
      data.insert(data.end(), T->e.begin(), T->e.end());
      auto k = g.find(data);
      if (!k) throw check_error("evaluate_group: product point missing");
      g.product[i][j] = k;
    }
  }
  g.inverse.resize(m);
  g.inverse_witnesses.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<elem> swapped(g.elements[i].begin() + static_cast<std::ptrdiff_t>(nn),
                              g.elements[i].end());
    swapped.insert(swapped.end(), g.elements[i].begin(),
                   g.elements[i].begin() + static_cast<std::ptrdiff_t>(nn));
    auto inv = g.find(swapped);
    if (!inv) throw check_error("evaluate_group: swapped point missing");
    g.inverse[i] = *inv;
    g.inverse_witnesses[i] = {*inv};
  }
  return g;
}

// ---------------------------------------------------------------------------
// Functor/matrix comparison and the symmetric-group labeling.

struct agreement_report {
  bool ok = false;
  std::string detail;
};

// The map (X, Y) -> X must be a bijection onto GL'_n(A) that preserves
// product definedness and values in both directions.
inline agreement_report functor_matrix_agreement(const partial_ring& A,
                                                 std::size_t n,
                                                 const budget& bgt = {}) {
  agreement_report rep;
  auto G = evaluate_group(group_kind::gln, n, A, bgt);
  auto M = gl_prime(A, n, bgt);
  const std::size_t nn = n * n;
  if (G.order() != M.order()) {
    rep.detail = "orders differ: " + std::to_string(G.order()) + " vs " +
                 std::to_string(M.order());
    return rep;
  }
  std::vector<std::size_t> to_matrix(G.order());
  std::vector<bool> hit(M.order(), false);
  for (std::size_t i = 0; i < G.order(); ++i) {
    std::vector<elem> x(G.elements[i].begin(),
                        G.elements[i].begin() + static_cast<std::ptrdiff_t>(nn));
    auto k = M.find(x);
    if (!k || hit[*k]) {
      rep.detail = "X-parts are not a bijection onto the matrix group";
      return rep;
    }
    hit[*k] = true;
    to_matrix[i] = *k;
  }
  for (std::size_t i = 0; i < G.order(); ++i) {
    for (std::size_t j = 0; j < G.order(); ++j) {
      auto lhs = G.product[i][j];
      auto rhs = M.product[to_matrix[i]][to_matrix[j]];
      if (lhs.has_value() != rhs.has_value()) {
        rep.detail = "product definedness disagrees at (" + std::to_string(i) +
                     "," + std::to_string(j) + ")";
        return rep;
      }
      if (lhs && to_matrix[*lhs] != *rhs) {
        rep.detail = "product values disagree at (" + std::to_string(i) + "," +
                     std::to_string(j) + ")";
        return rep;
      }
    }
  }
  rep.ok = true;
  return rep;
}

// Labels each element by the permutation of its X-part (row i maps to the
// column holding its 1).  Products compose left-to-right: the label of
// g*h is "apply g's permutation, then h's".
struct permutation_labeling {
  bool ok = false;
  std::string detail;
  std::vector<std::vector<std::size_t>> perms;  // per element
};

inline permutation_labeling symmetric_group_iso(const point_group& g,
                                                const partial_ring& A,
                                                std::size_t n) {
  permutation_labeling out;
  const std::size_t nn = n * n;
  for (const auto& data : g.elements) {
    if (data.size() < nn) {
      out.detail = "element data too short";
      return out;
    }
    std::vector<std::size_t> perm(n, n);
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        elem v = data[i * n + j];
        if (v == A.one()) {
          if (perm[i] != n || used[j]) {
            out.detail = "element is not a permutation matrix";
            return out;
          }
          perm[i] = j;
          used[j] = true;
        } else if (v != A.zero()) {
          out.detail = "element has an entry other than 0 or 1";
          return out;
        }
      }
    }
    if (std::find(perm.begin(), perm.end(), n) != perm.end()) {
      out.detail = "element is not a permutation matrix";
      return out;
    }
    out.perms.push_back(std::move(perm));
  }
  // Distinct labels and product-to-composition.
  for (std::size_t i = 0; i < g.order(); ++i) {
    for (std::size_t j = 0; j < g.order(); ++j) {
      if (i != j && out.perms[i] == out.perms[j]) {
        out.detail = "duplicate permutation labels";
        return out;
      }
      auto p = g.product[i][j];
      if (!p) {
        out.detail = "product of permutations undefined";
        return out;
      }
      for (std::size_t v = 0; v < n; ++v) {
        if (out.perms[*p][v] != out.perms[j][out.perms[i][v]]) {
          out.detail = "products do not compose";
          return out;
        }
      }
    }
  }
  out.ok = true;
  return out;
}

}  // namespace pring
