// Equivalence relations on partial structures: additivity, quotients,
// effectiveness (the kernel-pair property), congruences and quotient rings,
// and tensor products of partial monoids.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pring/base.hpp"
#include "pring/homs.hpp"
#include "pring/structures.hpp"
#include "pring/words.hpp"

namespace pring {

// A reflexive, symmetric, transitive pair set on a carrier.
class equiv_relation {
 public:
  equiv_relation() = default;

  // Takes the matrix as-is; throws unless it is an equivalence relation.
  static equiv_relation from_matrix(bitmat rel) {
    equiv_relation r;
    r.rel_ = std::move(rel);
    std::size_t n = r.rel_.size();
    for (std::size_t a = 0; a < n; ++a) {
      if (!r.rel_.get(a, a)) throw error("relation is not reflexive");
      for (std::size_t b = 0; b < n; ++b) {
        if (r.rel_.get(a, b) != r.rel_.get(b, a)) {
          throw error("relation is not symmetric");
        }
        for (std::size_t c = 0; c < n; ++c) {
          if (r.rel_.get(a, b) && r.rel_.get(b, c) && !r.rel_.get(a, c)) {
            throw error("relation is not transitive");
          }
        }
      }
    }
    return r;
  }

  // Reflexive-symmetric-transitive closure of the generating pairs.
  static equiv_relation closure(std::size_t carrier,
                                const std::vector<std::pair<elem, elem>>& pairs) {
    bitmat rel(carrier);
    for (std::size_t a = 0; a < carrier; ++a) rel.set(a, a);
    for (auto [a, b] : pairs) {
      rel.set(a, b);
      rel.set(b, a);
    }
    transitive_close(rel);
    equiv_relation r;
    r.rel_ = std::move(rel);
    return r;
  }

  bool related(elem a, elem b) const { return rel_.get(a, b); }
  std::size_t carrier() const { return rel_.size(); }
  const bitmat& matrix() const { return rel_; }

  bool is_total() const {
    for (std::size_t a = 0; a < rel_.size(); ++a) {
      for (std::size_t b = 0; b < rel_.size(); ++b) {
        if (!rel_.get(a, b)) return false;
      }
    }
    return true;
  }

  // Blocks listed by least member, each block sorted.
  std::vector<std::vector<elem>> classes() const {
    std::vector<std::vector<elem>> out;
    std::vector<bool> seen(rel_.size(), false);
    for (elem a = 0; a < rel_.size(); ++a) {
      if (seen[a]) continue;
      std::vector<elem> block;
      for (elem b = a; b < rel_.size(); ++b) {
        if (rel_.get(a, b)) {
          block.push_back(b);
          seen[b] = true;
        }
      }
      out.push_back(std::move(block));
    }
    return out;
  }

  std::vector<elem> class_index() const {
    std::vector<elem> idx(rel_.size(), undef);
    auto blocks = classes();
    for (elem c = 0; c < blocks.size(); ++c) {
      for (elem e : blocks[c]) idx[e] = c;
    }
    return idx;
  }

  static void transitive_close(bitmat& rel) {
    std::size_t n = rel.size();
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!rel.get(i, k)) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (rel.get(k, j)) rel.set(i, j);
        }
      }
    }
  }

  friend bool operator==(const equiv_relation&, const equiv_relation&) = default;

 private:
  bitmat rel_;
};

// ---------------------------------------------------------------------------
// Additivity: related pairs that are componentwise summable must have
// related sums, which is exactly what makes the quotient sum well defined.

struct additive_witness {
  elem a1, a2, b1, b2;  // a1 R a2, b1 R b2, sums defined but unrelated
};

inline std::optional<additive_witness> additivity_failure(
    const partial_magma& A, const equiv_relation& R) {
  for (elem a1 = 0; a1 < A.size(); ++a1) {
    for (elem a2 = 0; a2 < A.size(); ++a2) {
      if (!R.related(a1, a2)) continue;
      for (elem b1 = 0; b1 < A.size(); ++b1) {
        for (elem b2 = 0; b2 < A.size(); ++b2) {
          if (!R.related(b1, b2)) continue;
          if (!A.summable(a1, b1) || !A.summable(a2, b2)) continue;
          if (!R.related(A.add(a1, b1), A.add(a2, b2))) {
            return additive_witness{a1, a2, b1, b2};
          }
        }
      }
    }
  }
  return std::nullopt;
}

inline bool is_additive(const partial_magma& A, const equiv_relation& R) {
  return !additivity_failure(A, R).has_value();
}

// Additive closure of an arbitrary pair set: equivalence + additivity to a
// fixpoint.
inline equiv_relation additive_closure(
    const partial_magma& A, const std::vector<std::pair<elem, elem>>& pairs) {
  auto R = equiv_relation::closure(A.size(), pairs);
  for (;;) {
    auto w = additivity_failure(A, R);
    if (!w) return R;
    bitmat rel = R.matrix();
    rel.set(A.add(w->a1, w->b1), A.add(w->a2, w->b2));
    rel.set(A.add(w->a2, w->b2), A.add(w->a1, w->b1));
    equiv_relation::transitive_close(rel);
    R = equiv_relation::from_matrix(std::move(rel));
  }
}

// ---------------------------------------------------------------------------
// Quotient magma A // R.

struct quotient_magma_result {
  partial_magma magma;
  hom proj;                           // A -> magma
  std::vector<std::vector<elem>> classes;
};

inline quotient_magma_result quotient_magma(const partial_magma& A,
                                            const equiv_relation& R) {
  if (auto w = additivity_failure(A, R)) {
    throw error("quotient_magma: relation is not additive at (" +
                A.name(w->a1) + "~" + A.name(w->a2) + ") + (" + A.name(w->b1) +
                "~" + A.name(w->b2) + ")");
  }
  auto blocks = R.classes();
  auto idx = R.class_index();

  std::vector<std::string> names;
  names.reserve(blocks.size());
  for (const auto& b : blocks) names.push_back("[" + A.name(b.front()) + "]");

  partial_magma Q(names, idx[A.zero()]);
  for (elem a = 0; a < A.size(); ++a) {
    for (elem b = 0; b < A.size(); ++b) {
      if (A.summable(a, b)) Q.set_sum(idx[a], idx[b], idx[A.add(a, b)], false);
    }
  }
  require_valid(Q, level::magma, "quotient magma");
  return {std::move(Q), hom{idx}, std::move(blocks)};
}

// ---------------------------------------------------------------------------
// Effectiveness.
//
// An additive equivalence relation on a partial monoid is effective exactly
// when the coherence condition below holds: two ways of resolving a triple
// sum through representatives land in the same class.

struct condition_witness {
  elem a, a2, b, b2, c, c2, x, x2;
};

inline std::optional<condition_witness> effectiveness_failure(
    const partial_magma& A, const equiv_relation& R) {
  const std::size_t n = A.size();
  for (elem a = 0; a < n; ++a) {
    for (elem a2 = 0; a2 < n; ++a2) {
      if (!R.related(a, a2)) continue;
      for (elem b = 0; b < n; ++b) {
        if (!A.summable(a, b)) continue;
        for (elem b2 = 0; b2 < n; ++b2) {
          if (!R.related(b, b2)) continue;
          for (elem c2 = 0; c2 < n; ++c2) {
            if (!A.summable(b2, c2)) continue;
            for (elem c = 0; c < n; ++c) {
              if (!R.related(c, c2)) continue;
              elem ab = A.add(a, b);
              elem bc2 = A.add(b2, c2);
              for (elem x = 0; x < n; ++x) {
                if (!R.related(ab, x) || !A.summable(x, c)) continue;
                for (elem x2 = 0; x2 < n; ++x2) {
                  if (!R.related(bc2, x2) || !A.summable(a2, x2)) continue;
                  if (!R.related(A.add(x, c), A.add(a2, x2))) {
                    return condition_witness{a, a2, b, b2, c, c2, x, x2};
                  }
                }
              }
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

inline bool is_effective(const partial_magma& A, const equiv_relation& R) {
  return !effectiveness_failure(A, R).has_value();
}

// Independent route: R is effective iff the canonical map from A//R to its
// associative closure is injective.
inline bool kernel_pair_oracle(const partial_magma& A, const equiv_relation& R,
                               const budget& bgt = {}) {
  auto q = quotient_magma(A, R);
  auto closed = associative_closure(q.magma, bgt);
  return is_injective(closed.alpha);
}

// ---------------------------------------------------------------------------
// Congruences on partial rings: additive + multiplicative + effective.

class congruence {
 public:
  congruence() = default;
  explicit congruence(equiv_relation r) : rel_(std::move(r)) {}

  const equiv_relation& relation() const { return rel_; }
  bool related(elem a, elem b) const { return rel_.related(a, b); }
  bool is_total() const { return rel_.is_total(); }

 private:
  equiv_relation rel_;
};

inline std::optional<std::pair<elem, elem>> multiplicativity_failure(
    const partial_ring& A, const equiv_relation& R) {
  for (elem a = 0; a < A.size(); ++a) {
    for (elem b = 0; b < A.size(); ++b) {
      if (!R.related(a, b)) continue;
      for (elem c = 0; c < A.size(); ++c) {
        if (!R.related(A.mul(a, c), A.mul(b, c))) {
          return std::make_pair(a, c);
        }
      }
    }
  }
  return std::nullopt;
}

// Smallest congruence containing S: the fixpoint of equivalence,
// multiplicative and additive closure.  Effectiveness is verified on the
// result, not repaired; congruences are intersection-closed, so the
// fixpoint is least among relations closed under the three rules and any
// congruence containing S contains it.
inline congruence congruence_closure(
    const partial_ring& A, const std::vector<std::pair<elem, elem>>& S,
    const budget& /*bgt*/ = {}) {
  require_valid(A, "congruence_closure input");
  bitmat rel(A.size());
  for (elem a = 0; a < A.size(); ++a) rel.set(a, a);
  for (auto [a, b] : S) {
    rel.set(a, b);
    rel.set(b, a);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    equiv_relation::transitive_close(rel);
    for (elem a = 0; a < A.size(); ++a) {
      for (elem b = 0; b < A.size(); ++b) {
        if (!rel.get(a, b)) continue;
        for (elem c = 0; c < A.size(); ++c) {
          elem ac = A.mul(a, c), bc = A.mul(b, c);
          if (!rel.get(ac, bc)) {
            rel.set(ac, bc);
            rel.set(bc, ac);
            changed = true;
          }
        }
        for (elem c = 0; c < A.size(); ++c) {
          for (elem d = 0; d < A.size(); ++d) {
            if (!rel.get(c, d) || !A.summable(a, c) || !A.summable(b, d)) {
              continue;
            }
            elem s = A.add(a, c), t = A.add(b, d);
            if (!rel.get(s, t)) {
              rel.set(s, t);
              rel.set(t, s);
              changed = true;
            }
          }
        }
      }
    }
  }
  auto R = equiv_relation::from_matrix(std::move(rel));
  if (auto w = effectiveness_failure(A, R)) {
    throw check_error(
        "congruence_closure: closure is not effective (witness " +
        A.name(w->a) + "," + A.name(w->b) + "," + A.name(w->c) + ")");
  }
  return congruence(std::move(R));
}

// ---------------------------------------------------------------------------
// Quotient ring A/C.
//
// The additive part is the associative closure of A//C; multiplication
// distributes over representative words, which is exactly the bilinear
// extension to the closure.

struct quotient_ring_result {
  partial_ring ring;
  hom proj;  // A -> ring
};

inline quotient_ring_result quotient_ring(const partial_ring& A,
                                          const congruence& C,
                                          const budget& bgt = {}) {
  if (auto w = effectiveness_failure(A, C.relation())) {
    throw error("quotient_ring: relation is not effective (witness " +
                A.name(w->a) + "," + A.name(w->b) + "," + A.name(w->c) + ")");
  }
  if (multiplicativity_failure(A, C.relation())) {
    throw error("quotient_ring: relation is not multiplicative");
  }
  auto q = quotient_magma(A, C.relation());
  auto closed = associative_closure(q.magma, bgt);
  if (!is_injective(closed.alpha)) {
    throw check_error("quotient_ring: canonical map is not injective");
  }

  const partial_magma& M = closed.monoid;
  auto idx = q.proj.map;                  // A -> classes
  const auto& cls_in_M = closed.alpha.map;  // classes -> M

  // Class-level multiplication, well defined by multiplicativity.
  auto class_mul = [&](elem u, elem v) {
    elem a = q.classes[u].front(), b = q.classes[v].front();
    return idx[A.mul(a, b)];
  };

  word_system ws = word_system_of(q.magma);
  class_registry reg(ws, bgt);
  for (const auto& r : closed.reps) {
    reg.find_or_add(r, "");  // seed with the closure's carrier, same order
  }

  partial_ring R(M, cls_in_M[idx[A.one()]]);
  for (elem u = 0; u < M.size(); ++u) {
    for (elem v = u; v < M.size(); ++v) {
      word prod;
      for (elem p : closed.reps[u]) {
        for (elem r : closed.reps[v]) prod.push_back(class_mul(p, r));
      }
      auto c = reg.find(sorted_word(prod));
      if (!c) {
        throw check_error("quotient_ring: product left the closure carrier");
      }
      R.set_mul(u, v, *c);
    }
  }
  require_valid(R, "quotient ring");

  hom proj;
  proj.map.resize(A.size());
  for (elem a = 0; a < A.size(); ++a) proj.map[a] = cls_in_M[idx[a]];
  if (!is_ring_hom(A, R, proj)) {
    throw check_error("quotient_ring: projection is not a ring homomorphism");
  }
  return {std::move(R), std::move(proj)};
}

// ---------------------------------------------------------------------------
// Tensor product of partial monoids.

struct tensor_result {
  partial_magma monoid;                 // validated partial monoid
  std::vector<std::vector<elem>> gen;   // class of a (x) b, indexed [a][b]
};

inline tensor_result tensor(const partial_magma& A, const partial_magma& B,
                            const budget& bgt = {}) {
  require_valid(A, level::monoid, "tensor lhs");
  require_valid(B, level::monoid, "tensor rhs");

  // Letters are pairs (a,b); anything with a zero component collapses to
  // the empty word, merges act on a shared component.
  word_system ws;
  ws.alphabet = A.size() * B.size();
  ws.merge.assign(ws.alphabet * ws.alphabet, {});
  auto letter = [&](elem a, elem b) {
    return static_cast<elem>(a * B.size() + b);
  };
  for (elem a = 0; a < A.size(); ++a) ws.droppable.push_back(letter(a, B.zero()));
  for (elem b = 0; b < B.size(); ++b) ws.droppable.push_back(letter(A.zero(), b));
  std::sort(ws.droppable.begin(), ws.droppable.end());
  ws.droppable.erase(std::unique(ws.droppable.begin(), ws.droppable.end()),
                     ws.droppable.end());
  for (elem a1 = 0; a1 < A.size(); ++a1) {
    for (elem a2 = a1; a2 < A.size(); ++a2) {
      if (!A.summable(a1, a2)) continue;
      for (elem b = 0; b < B.size(); ++b) {
        ws.add_merge(letter(a1, b), letter(a2, b), letter(A.add(a1, a2), b));
      }
    }
  }
  for (elem b1 = 0; b1 < B.size(); ++b1) {
    for (elem b2 = b1; b2 < B.size(); ++b2) {
      if (!B.summable(b1, b2)) continue;
      for (elem a = 0; a < A.size(); ++a) {
        ws.add_merge(letter(a, b1), letter(a, b2), letter(a, B.add(b1, b2)));
      }
    }
  }
  ws.build_splits();

  std::vector<std::string> letter_names(ws.alphabet);
  for (elem a = 0; a < A.size(); ++a) {
    for (elem b = 0; b < B.size(); ++b) {
      letter_names[letter(a, b)] = A.name(a) + "⊗" + B.name(b);
    }
  }
  std::string zero_name =
      A.name(A.zero()) + "⊗" + B.name(B.zero());

  // Generators: classes of the single letters.  The registry here is seeded
  // in the same order the closure will seed its own, so class indices agree.
  class_registry reg(ws, bgt);
  elem zero_cls = reg.find_or_add({}, zero_name);
  std::vector<std::vector<elem>> gen(A.size(), std::vector<elem>(B.size()));
  std::vector<word> init;
  std::vector<elem> init_cls;
  for (elem a = 0; a < A.size(); ++a) {
    for (elem b = 0; b < B.size(); ++b) {
      word w{letter(a, b)};
      elem c = reg.find_or_add(w, letter_names[letter(a, b)]);
      gen[a][b] = c;
      if (c != zero_cls &&
          std::find(init_cls.begin(), init_cls.end(), c) == init_cls.end()) {
        init.push_back(w);
        init_cls.push_back(c);
      }
    }
  }

  // Maximal partial magma structure on the generator image: a pair is
  // summable iff its concatenation is again a generator class.
  std::vector<std::pair<word, word>> init_pairs;
  std::vector<word> gen_words;
  gen_words.push_back({});
  for (const auto& w : init) gen_words.push_back(w);
  for (std::size_t i = 0; i < gen_words.size(); ++i) {
    for (std::size_t j = i; j < gen_words.size(); ++j) {
      word w = concat_words(gen_words[i], gen_words[j]);
      if (reg.find(w).has_value()) {
        init_pairs.push_back({gen_words[i], gen_words[j]});
      }
    }
  }

  auto closed = monoid_closure(ws, init, init_pairs, letter_names, zero_name, bgt);
  tensor_result out;
  out.monoid = std::move(closed.monoid);
  out.gen = std::move(gen);
  return out;
}

}  // namespace pring
