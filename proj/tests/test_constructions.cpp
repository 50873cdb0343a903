// Quotients, effectiveness, congruence closure, monoid-completion word
// queries, associative closure and tensor products.
#include <algorithm>
#include <random>
#include <set>

#include <catch_amalgamated.hpp>

#include "pring/builtins.hpp"
#include "pring/construct.hpp"
#include "pring/words.hpp"
#include "support.hpp"

using namespace pring;
using namespace testsupport;

namespace {

// Independent oracle: least congruence containing S, found by scanning all
// partitions and filtering the congruence axioms directly.
std::optional<equiv_relation> least_congruence_oracle(
    const partial_ring& A, const std::vector<std::pair<elem, elem>>& S) {
  std::optional<equiv_relation> best;
  for (const auto& part : all_partitions(A.size())) {
    auto R = equiv_relation::from_matrix(part);
    bool contains = true;
    for (auto [a, b] : S) {
      if (!R.related(a, b)) contains = false;
    }
    if (!contains || !is_additive(A, R)) continue;
    if (multiplicativity_failure(A, R)) continue;
    if (!is_effective(A, R)) continue;
    if (!best || R.matrix().count() < best->matrix().count()) best = R;
  }
  return best;
}

// The frozen non-effective instance found by exhaustive search over all
// partial monoids of size <= 4: sums 2+2 = 1, 2+3 = 1, 3+3 = 1 and the
// relation identifying 0 with 1.
partial_magma frozen_bad_monoid() {
  partial_magma m({"0", "1", "2", "3"}, 0);
  m.add_zero_sums();
  m.set_sum(2, 2, 1);
  m.set_sum(2, 3, 1);
  m.set_sum(3, 3, 1);
  return m;
}

equiv_relation frozen_bad_relation() {
  return equiv_relation::closure(4, {{0, 1}});
}

}  // namespace

TEST_CASE("amon_equal word queries") {
  auto f1 = make_f1();
  auto f2 = make_f2();
  CHECK(amon_equal(f1, {1, 1}, {1, 1}) == eq_result::equal);
  CHECK(amon_equal(f2, {1, 1}, {}) == eq_result::equal);
  CHECK(amon_equal(f1, {1, 1}, {1}) == eq_result::distinct);
  CHECK(amon_equal(f1, {1}, {1, 0, 0}) == eq_result::equal);

  SECTION("tiny state budgets give unknown") {
    budget tiny;
    tiny.max_states = 1;
    CHECK(amon_equal(f2, {1, 1}, {}, tiny) == eq_result::unknown);
  }
}

TEST_CASE("quotient magma") {
  SECTION("diagonal relation is the identity quotient") {
    auto a = product_ring(make_f2(), make_f2());
    auto q = quotient_magma(a, equiv_relation::closure(a.size(), {}));
    CHECK(is_isomorphic(q.magma, a, level::monoid));
  }
  SECTION("F1xF1 with (1,0) ~ (0,1) has three classes") {
    auto a = product_ring(make_f1(), make_f1());
    // names: 0=(0,0), 1=(0,1), 2=(1,0), 3=(1,1)
    auto R = additive_closure(a, {{2, 1}});
    auto q = quotient_magma(a, R);
    CHECK(q.magma.size() == 3);
    CHECK(validate(q.magma, level::magma).ok());
    CHECK(is_magma_hom(a, q.magma, q.proj));
  }
  SECTION("Z/4 by the mod-2 relation is Z/2") {
    auto z4 = make_zmod(4);
    auto R = equiv_relation::closure(4, {{0, 2}, {1, 3}});
    REQUIRE(is_additive(z4, R));
    auto q = quotient_magma(z4, R);
    CHECK(is_isomorphic(q.magma, make_zmod(2), level::monoid));
  }
  SECTION("non-additive relations are rejected with a witness") {
    auto z4 = make_zmod(4);
    auto R = equiv_relation::closure(4, {{0, 1}});  // 0~1 but 0+1=1 !~ 1+1=2
    REQUIRE_FALSE(is_additive(z4, R));
    CHECK_THROWS_WITH(quotient_magma(z4, R),
                      Catch::Matchers::ContainsSubstring("not additive"));
  }
  SECTION("coequalizer property against enumerate_homs") {
    auto a = product_ring(make_f1(), make_f1());
    auto R = additive_closure(a, {{2, 1}});
    auto q = quotient_magma(a, R);
    for (const auto& b : ring_corpus()) {
      if (b.ring.size() > 4) continue;
      auto down = enumerate_homs(q.magma, b.ring, level::magma);
      std::size_t constant_on_classes = 0;
      for (const auto& f : enumerate_homs(a, b.ring, level::magma)) {
        bool constant = true;
        for (elem x = 0; x < a.size() && constant; ++x) {
          for (elem y = 0; y < a.size() && constant; ++y) {
            if (R.related(x, y) && f(x) != f(y)) constant = false;
          }
        }
        if (!constant) continue;
        ++constant_on_classes;
        std::size_t factorizations = 0;
        for (const auto& g : down) {
          if (compose(q.proj, g) == f) ++factorizations;
        }
        CHECK(factorizations == 1);
      }
      CHECK(constant_on_classes == down.size());
    }
  }
}

TEST_CASE("effectiveness: condition route vs kernel-pair route") {
  SECTION("diagonal and total relations are effective") {
    for (const auto& [name, m] : monoid_corpus()) {
      INFO("monoid " << name);
      auto diag = equiv_relation::closure(m.size(), {});
      CHECK(is_effective(m, diag));
      CHECK(kernel_pair_oracle(m, diag));
      bitmat total(m.size());
      for (elem a = 0; a < m.size(); ++a) {
        for (elem b = 0; b < m.size(); ++b) total.set(a, b);
      }
      auto all = equiv_relation::from_matrix(total);
      if (is_additive(m, all)) {
        CHECK(is_effective(m, all));
        CHECK(kernel_pair_oracle(m, all));
      }
    }
  }
  SECTION("frozen violating instance") {
    auto m = frozen_bad_monoid();
    REQUIRE(validate(m, level::monoid).ok());
    auto R = frozen_bad_relation();
    REQUIRE(is_additive(m, R));
    auto w = effectiveness_failure(m, R);
    REQUIRE(w.has_value());
    CHECK_FALSE(kernel_pair_oracle(m, R));
    // The witness really violates the condition.
    CHECK(R.related(w->a, w->a2));
    CHECK(R.related(w->b, w->b2));
    CHECK(R.related(w->c, w->c2));
    CHECK(m.summable(w->a, w->b));
    CHECK(m.summable(w->b2, w->c2));
    CHECK(R.related(m.add(w->a, w->b), w->x));
    CHECK(R.related(m.add(w->b2, w->c2), w->x2));
    CHECK(m.summable(w->x, w->c));
    CHECK(m.summable(w->a2, w->x2));
    CHECK_FALSE(R.related(m.add(w->x, w->c), m.add(w->a2, w->x2)));
  }
  SECTION("exhaustive agreement on all monoids of size <= 3") {
    for (std::size_t sz = 1; sz <= 3; ++sz) {
      for (const auto& m : enumerate_partial_monoids(sz)) {
        for (const auto& part : all_partitions(sz)) {
          auto R = equiv_relation::from_matrix(part);
          if (!is_additive(m, R)) continue;
          CHECK(is_effective(m, R) == kernel_pair_oracle(m, R));
        }
      }
    }
  }
}

TEST_CASE("congruence closure") {
  SECTION("empty generators give the diagonal") {
    for (const auto& r : ring_corpus()) {
      auto C = congruence_closure(r.ring, {});
      CHECK(C.relation() == equiv_relation::closure(r.ring.size(), {}));
      CHECK_FALSE((r.ring.size() > 1 && C.is_total()));
    }
  }
  SECTION("Z/4 with 2 ~ 0 gives the mod-2 congruence") {
    auto z4 = make_zmod(4);
    auto C = congruence_closure(z4, {{2, 0}});
    CHECK(C.related(0, 2));
    CHECK(C.related(1, 3));
    CHECK_FALSE(C.related(0, 1));
    auto oracle = least_congruence_oracle(z4, {{2, 0}});
    REQUIRE(oracle.has_value());
    CHECK(oracle->matrix() == C.relation().matrix());
    auto q = quotient_ring(z4, C);
    CHECK(is_isomorphic(q.ring, make_zmod(2), level::ring));
  }
  SECTION("F1xF1 with (1,0) ~ (1,1)") {
    auto a = product_ring(make_f1(), make_f1());
    auto C = congruence_closure(a, {{2, 3}});
    auto oracle = least_congruence_oracle(a, {{2, 3}});
    REQUIRE(oracle.has_value());
    CHECK(oracle->matrix() == C.relation().matrix());
    auto q = quotient_ring(a, C);
    CHECK(validate(q.ring).ok());
    CHECK(q.ring.size() == 2);
  }
  SECTION("F1xF1 with (1,0) ~ (0,1) degenerates to the zero ring") {
    // Multiplying the generator pair by the idempotents kills both factors,
    // and additivity then drags (1,1) into the class of zero.
    auto a = product_ring(make_f1(), make_f1());
    auto C = congruence_closure(a, {{2, 1}});
    CHECK(C.is_total());
    auto oracle = least_congruence_oracle(a, {{2, 1}});
    REQUIRE(oracle.has_value());
    CHECK(oracle->is_total());
    auto q = quotient_ring(a, C);
    CHECK(q.ring.size() == 1);
  }
  SECTION("least congruence matches the partition-scan oracle on the corpus") {
    for (const auto& r : ring_corpus()) {
      for (elem a = 0; a < r.ring.size(); ++a) {
        for (elem b = a + 1; b < r.ring.size(); ++b) {
          auto C = congruence_closure(r.ring, {{a, b}});
          auto oracle = least_congruence_oracle(r.ring, {{a, b}});
          REQUIRE(oracle.has_value());
          CHECK(oracle->matrix() == C.relation().matrix());
        }
      }
    }
  }
  SECTION("congruences are intersection-closed") {
    std::mt19937 rng(20240817);
    for (const auto& r : ring_corpus()) {
      if (r.ring.size() > 4) continue;
      std::uniform_int_distribution<elem> pick(0, static_cast<elem>(r.ring.size() - 1));
      for (int trial = 0; trial < 25; ++trial) {
        auto c1 = congruence_closure(r.ring, {{pick(rng), pick(rng)}});
        auto c2 = congruence_closure(r.ring, {{pick(rng), pick(rng)}});
        bitmat inter(r.ring.size());
        for (elem x = 0; x < r.ring.size(); ++x) {
          for (elem y = 0; y < r.ring.size(); ++y) {
            if (c1.related(x, y) && c2.related(x, y)) inter.set(x, y);
          }
        }
        auto R = equiv_relation::from_matrix(std::move(inter));
        CHECK(is_additive(r.ring, R));
        CHECK(is_effective(r.ring, R));
        CHECK_FALSE(multiplicativity_failure(r.ring, R).has_value());
      }
    }
  }
}

TEST_CASE("quotient ring") {
  SECTION("diagonal congruence reproduces the ring") {
    for (const auto& r : ring_corpus()) {
      auto q = quotient_ring(r.ring, congruence_closure(r.ring, {}));
      CHECK(is_isomorphic(q.ring, r.ring, level::ring));
    }
  }
  SECTION("universal property against enumerate_homs") {
    auto z4 = make_zmod(4);
    auto C = congruence_closure(z4, {{2, 0}});
    auto q = quotient_ring(z4, C);
    for (const auto& b : ring_corpus()) {
      auto down = enumerate_homs(q.ring, b.ring, level::ring);
      std::size_t equalizing = 0;
      for (const auto& f : enumerate_homs(z4, b.ring, level::ring)) {
        bool eq = true;
        for (elem x = 0; x < 4 && eq; ++x) {
          for (elem y = 0; y < 4 && eq; ++y) {
            if (C.related(x, y) && f(x) != f(y)) eq = false;
          }
        }
        if (!eq) continue;
        ++equalizing;
        std::size_t factorizations = 0;
        for (const auto& g : down) {
          if (compose(q.proj, g) == f) ++factorizations;
        }
        CHECK(factorizations == 1);
      }
      CHECK(equalizing == down.size());
    }
  }
}

TEST_CASE("associative closure") {
  SECTION("idempotent on monoids: alpha is an isomorphism") {
    for (const auto& [name, m] : monoid_corpus()) {
      INFO("monoid " << name);
      auto c = associative_closure(m);
      CHECK(c.monoid.size() == m.size());
      CHECK(is_injective(c.alpha));
      CHECK(is_isomorphic(c.monoid, m, level::monoid));
    }
  }
  SECTION("frozen instance: Z/3 with 2+2 dropped closes back to Z/3") {
    partial_magma m({"0", "1", "2"}, 0);
    m.add_zero_sums();
    m.set_sum(1, 1, 2);
    m.set_sum(1, 2, 0);
    REQUIRE_FALSE(validate(m, level::monoid).ok());  // (1,2,2) breaks (c)
    auto c = associative_closure(m);
    CHECK(c.monoid.size() == 3);
    CHECK(c.monoid.summable(c.alpha(2), c.alpha(2)));
    CHECK(c.monoid.add(c.alpha(2), c.alpha(2)) == c.alpha(1));
    CHECK(is_isomorphic(c.monoid, make_zmod(3), level::monoid));
  }
  SECTION("universal property: magma homs factor uniquely through alpha") {
    partial_magma m({"0", "1", "2"}, 0);
    m.add_zero_sums();
    m.set_sum(1, 1, 2);
    m.set_sum(1, 2, 0);
    auto c = associative_closure(m);
    for (const auto& [name, target] : monoid_corpus()) {
      if (target.size() > 4) continue;
      INFO("target " << name);
      auto raw = enumerate_homs(m, target, level::magma);
      auto closed = enumerate_homs(c.monoid, target, level::monoid);
      CHECK(raw.size() == closed.size());
      for (const auto& f : raw) {
        std::size_t factorizations = 0;
        for (const auto& g : closed) {
          if (compose(c.alpha, g) == f) ++factorizations;
        }
        CHECK(factorizations == 1);
      }
    }
  }
  SECTION("unbounded saturation hits the element budget") {
    // a+b = a is the only nontrivial sum: saturation keeps adjoining
    // b+b, b+b+b, ...
    partial_magma m({"0", "a", "b"}, 0);
    m.add_zero_sums();
    m.set_sum(1, 2, 1);
    budget bgt;
    bgt.max_elements = 16;
    CHECK_THROWS_AS(associative_closure(m, bgt), budget_error);
  }
}

TEST_CASE("tensor product") {
  auto f1 = make_f1();
  auto f2 = make_f2();
  auto bl = make_bool();

  SECTION("F1 is the unit") {
    for (const auto* a : {&f1, &f2, &bl}) {
      auto t = tensor(f1, *a);
      CHECK(is_isomorphic(t.monoid, *a, level::monoid));
    }
    auto z3 = make_zmod(3);
    auto t = tensor(f1, z3);
    CHECK(is_isomorphic(t.monoid, z3, level::monoid));
  }
  SECTION("symmetry on small carriers") {
    std::vector<const partial_ring*> rs{&f1, &f2, &bl};
    auto z3 = make_zmod(3);
    rs.push_back(&z3);
    for (const auto* a : rs) {
      for (const auto* b : rs) {
        auto t1 = tensor(*a, *b);
        auto t2 = tensor(*b, *a);
        CHECK(is_isomorphic(t1.monoid, t2.monoid, level::monoid));
      }
    }
  }
  SECTION("cyclic groups: the classical gcd oracle") {
    auto t22 = tensor(f2, f2);
    CHECK(is_isomorphic(t22.monoid, f2, level::monoid));
    auto z3 = make_zmod(3);
    auto t23 = tensor(f2, z3);
    CHECK(t23.monoid.size() == 1);  // gcd(2,3) = 1
    auto t33 = tensor(z3, z3);
    CHECK(is_isomorphic(t33.monoid, z3, level::monoid));
  }
  SECTION("BOOL absorbs itself") {
    auto t = tensor(bl, bl);
    CHECK(is_isomorphic(t.monoid, bl, level::monoid));
  }
  SECTION("bilinear universal property") {
    std::vector<const partial_ring*> rs{&f1, &f2, &bl};
    for (const auto* a : rs) {
      for (const auto* b : rs) {
        auto t = tensor(*a, *b);
        for (const auto* c : rs) {
          // All bilinear maps a x b -> c, by raw enumeration.
          std::set<std::vector<elem>> bilinear;
          for_each_map(a->size() * b->size(), c->size(),
                       [&](const std::vector<elem>& f) {
                         for (elem x = 0; x < a->size(); ++x) {
                           hom partial_map;
                           for (elem y = 0; y < b->size(); ++y) {
                             partial_map.map.push_back(f[x * b->size() + y]);
                           }
                           if (!is_magma_hom(*b, *c, partial_map)) return;
                         }
                         for (elem y = 0; y < b->size(); ++y) {
                           hom partial_map;
                           for (elem x = 0; x < a->size(); ++x) {
                             partial_map.map.push_back(f[x * b->size() + y]);
                           }
                           if (!is_magma_hom(*a, *c, partial_map)) return;
                         }
                         bilinear.insert(f);
                       });
          // Each monoid hom out of the tensor induces a bilinear map via
          // the generators; the correspondence is one-to-one.
          std::set<std::vector<elem>> induced;
          for (const auto& h : enumerate_homs(t.monoid, *c, level::monoid)) {
            std::vector<elem> f;
            for (elem x = 0; x < a->size(); ++x) {
              for (elem y = 0; y < b->size(); ++y) {
                f.push_back(h(t.gen[x][y]));
              }
            }
            induced.insert(f);
          }
          CHECK(induced == bilinear);
          CHECK(induced.size() ==
                enumerate_homs(t.monoid, *c, level::monoid).size());
        }
      }
    }
  }
  SECTION("hom-tensor adjunction counts") {
    std::vector<const partial_ring*> rs{&f1, &f2, &bl};
    for (const auto* a : rs) {
      for (const auto* b : rs) {
        auto t = tensor(*a, *b);
        for (const auto* c : rs) {
          auto lhs = enumerate_homs(t.monoid, *c, level::monoid).size();
          auto hbc = hom_object(*b, *c);
          auto rhs = enumerate_homs(*a, hbc.object, level::monoid).size();
          CHECK(lhs == rhs);
        }
      }
    }
  }
}
