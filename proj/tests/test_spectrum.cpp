// Spectra, structure sheaves, global sections and morphisms of spectra.
#include <algorithm>
#include <map>
#include <set>

#include <catch_amalgamated.hpp>

#include "pring/builtins.hpp"
#include "pring/spectrum.hpp"
#include "support.hpp"

using namespace pring;
using namespace testsupport;

TEST_CASE("spec points") {
  auto f1 = make_f1();
  auto Xf1 = spec(f1);
  REQUIRE(Xf1.npoints() == 1);
  CHECK(Xf1.points[0] == zero_ideal(f1));

  auto z4 = make_zmod(4);
  auto Xz4 = spec(z4);
  REQUIRE(Xz4.npoints() == 1);
  CHECK(Xz4.points[0] == make_ideal_set({0, 2}));

  auto p = product_ring(f1, f1);
  CHECK(spec(p).npoints() == 2);

  CHECK(spec(make_zero_ring()).npoints() == 0);
}

TEST_CASE("basis laws") {
  for (const auto& r : small_ring_corpus()) {
    auto X = spec(r.ring);
    CHECK(X.basis[r.ring.zero()] == 0);
    CHECK(X.basis[r.ring.one()] == X.whole);
    for (elem a = 0; a < r.ring.size(); ++a) {
      for (elem b = 0; b < r.ring.size(); ++b) {
        CHECK(X.basis[r.ring.mul(a, b)] == (X.basis[a] & X.basis[b]));
      }
    }
    // V(a) complements the union of the basic opens of a's elements.
    for (const auto& I : all_ideals(r.ring)) {
      open_mask u = 0;
      for (elem a : I.elems) u |= X.basis[a];
      CHECK(X.closed_set(I) == (X.whole & ~u));
    }
  }
}

TEST_CASE("stalks") {
  auto f1 = make_f1();
  auto Xf1 = spec(f1);
  CHECK(is_isomorphic(stalk(f1, Xf1.points[0]).ring, f1, level::ring));

  auto z4 = make_zmod(4);
  auto Xz4 = spec(z4);
  CHECK(is_isomorphic(stalk(z4, Xz4.points[0]).ring, z4, level::ring));

  auto p = product_ring(f1, f1);
  for (const auto& pt : spec(p).points) {
    CHECK(is_isomorphic(stalk(p, pt).ring, f1, level::ring));
  }

  SECTION("every stalk is local") {
    for (const auto& r : small_ring_corpus()) {
      for (const auto& pt : spec(r.ring).points) {
        CHECK(is_local(stalk(r.ring, pt).ring).has_value());
      }
    }
  }
}

TEST_CASE("presheaf sections") {
  auto z4 = make_zmod(4);
  auto X = spec(z4);
  SECTION("empty open gives the zero ring") {
    auto pre = presheaf_sections(z4, X, 0);
    CHECK(pre.ring.size() == 1);
  }
  SECTION("fractions over a basic open receive the single localization") {
    for (const auto& r : small_ring_corpus()) {
      auto Xr = spec(r.ring);
      for (elem s = 0; s < r.ring.size(); ++s) {
        // Powers of s as a multiplicative set.
        std::vector<elem> powers{r.ring.one()};
        elem p = s;
        for (std::size_t i = 0; i <= r.ring.size(); ++i) {
          powers.push_back(p);
          p = r.ring.mul(p, s);
        }
        auto As = localize(r.ring, powers);
        auto sheaf = sheaf_sections(r.ring, Xr, Xr.basis[s]);
        // a/s^r maps to its germ family; the map is injective.
        std::map<elem, elem> img;
        bool injective = true;
        for (elem a = 0; a < r.ring.size(); ++a) {
          for (elem d : As.mult_set) {
            std::vector<elem> fam;
            for (std::size_t i = 0; i < sheaf.point_ids.size(); ++i) {
              fam.push_back(sheaf.stalks[i].frac(a, d));
            }
            auto sec = sheaf.find_section(fam);
            REQUIRE(sec.has_value());
            auto [it, inserted] = img.emplace(As.frac(a, d), *sec);
            if (!inserted && it->second != *sec) injective = false;
          }
        }
        std::set<elem> values;
        for (auto [k, v] : img) values.insert(v);
        CHECK(injective);
        CHECK(values.size() == img.size());
      }
    }
  }
}

TEST_CASE("sheaf sections") {
  SECTION("empty open gives the zero ring") {
    auto z4 = make_zmod(4);
    auto sheaf = sheaf_sections(z4, spec(z4), 0);
    CHECK(sheaf.ring.size() == 1);
  }
  SECTION("global sections of a partial field recover the field") {
    for (const auto& r : ring_corpus()) {
      if (!is_partial_field(r.ring)) continue;
      auto X = spec(r.ring);
      auto sheaf = sheaf_sections(r.ring, X, X.whole);
      CHECK(is_isomorphic(sheaf.ring, r.ring, level::ring));
    }
  }
  SECTION("one-point spectra: global sections are the stalk") {
    auto z4 = make_zmod(4);
    auto X = spec(z4);
    auto sheaf = sheaf_sections(z4, X, X.whole);
    CHECK(is_isomorphic(sheaf.ring, z4, level::ring));
  }
  SECTION("stalk of the sheaf at p is the localization at p") {
    for (const auto& r : small_ring_corpus()) {
      auto X = spec(r.ring);
      for (std::size_t i = 0; i < X.points.size(); ++i) {
        open_mask min_open = X.basis[min_open_element(r.ring, X.points[i])];
        auto sheaf = sheaf_sections(r.ring, X, min_open);
        CHECK(is_isomorphic(sheaf.ring, stalk(r.ring, X.points[i]).ring,
                            level::ring));
      }
    }
  }
  SECTION("restrictions compose and satisfy the sheaf axioms") {
    for (const auto& r : small_ring_corpus()) {
      auto X = spec(r.ring);
      std::map<open_mask, sheaf_ring> sheaves;
      for (open_mask u : X.opens) sheaves.emplace(u, sheaf_sections(r.ring, X, u));
      for (open_mask u : X.opens) {
        for (open_mask v : X.opens) {
          if ((v & u) != v) continue;
          auto res_uv = restriction_map(sheaves[u], sheaves[v]);
          for (open_mask t : X.opens) {
            if ((t & v) != t) continue;
            auto res_vt = restriction_map(sheaves[v], sheaves[t]);
            auto res_ut = restriction_map(sheaves[u], sheaves[t]);
            CHECK(compose(res_uv, res_vt) == res_ut);
          }
        }
      }
      // Identity and gluing over basic covers.
      for (open_mask u : X.opens) {
        std::vector<open_mask> cover;
        for (elem a = 0; a < r.ring.size(); ++a) {
          if ((X.basis[a] & u) == X.basis[a] && X.basis[a]) {
            cover.push_back(X.basis[a]);
          }
        }
        open_mask covered = 0;
        for (open_mask c : cover) covered |= c;
        if (covered != u) continue;
        const auto& SU = sheaves[u];
        // Identity: sections agreeing on every cover piece are equal.
        for (elem f = 0; f < SU.ring.size(); ++f) {
          for (elem g = 0; g < SU.ring.size(); ++g) {
            if (f == g) continue;
            bool agree = true;
            for (open_mask c : cover) {
              auto res = restriction_map(SU, sheaves[c]);
              if (res(f) != res(g)) agree = false;
            }
            CHECK_FALSE(agree);
          }
        }
        // Gluing: compatible families come from a section.
        std::vector<std::vector<elem>> choice(cover.size());
        std::vector<std::size_t> idx(cover.size(), 0);
        if (cover.empty()) continue;
        std::function<void(std::size_t, std::vector<elem>&)> rec =
            [&](std::size_t ci, std::vector<elem>& picks) {
              if (ci == cover.size()) {
                // Check pairwise compatibility on intersections.
                for (std::size_t i = 0; i < cover.size(); ++i) {
                  for (std::size_t j = i + 1; j < cover.size(); ++j) {
                    open_mask inter = cover[i] & cover[j];
                    auto r1 = restriction_map(sheaves[cover[i]], sheaves[inter]);
                    auto r2 = restriction_map(sheaves[cover[j]], sheaves[inter]);
                    if (r1(picks[i]) != r2(picks[j])) return;
                  }
                }
                std::size_t gluings = 0;
                for (elem f = 0; f < SU.ring.size(); ++f) {
                  bool match = true;
                  for (std::size_t i = 0; i < cover.size(); ++i) {
                    auto res = restriction_map(SU, sheaves[cover[i]]);
                    if (res(f) != picks[i]) match = false;
                  }
                  if (match) ++gluings;
                }
                CHECK(gluings == 1);
                return;
              }
              for (elem s = 0; s < sheaves[cover[ci]].ring.size(); ++s) {
                picks.push_back(s);
                rec(ci + 1, picks);
                picks.pop_back();
              }
            };
        std::vector<elem> picks;
        rec(0, picks);
      }
    }
  }
}

TEST_CASE("gamma") {
  SECTION("injective for every corpus ring") {
    for (const auto& r : small_ring_corpus()) {
      auto X = spec(r.ring);
      auto G = gamma(r.ring, X);
      CHECK(is_injective(G.gamma));
      CHECK(G.integral_witness.size() == G.sections.ring.size());
    }
  }
  SECTION("bijective for partial fields") {
    for (const auto& r : ring_corpus()) {
      if (!is_partial_field(r.ring)) continue;
      auto X = spec(r.ring);
      auto G = gamma(r.ring, X);
      CHECK(G.sections.ring.size() == r.ring.size());
    }
  }
  SECTION("an isomorphism for Z/4") {
    auto z4 = make_zmod(4);
    auto G = gamma(z4, spec(z4));
    CHECK(G.sections.ring.size() == 4);
    CHECK(is_injective(G.gamma));
  }
}

TEST_CASE("spec gamma comparison") {
  for (const auto& r : ring_corpus()) {
    INFO("ring " << r.name);
    auto w = spec_gamma_check(r.ring);
    INFO(w.detail);
    CHECK(w.ok);
  }
  SECTION("the zero ring is vacuous") {
    auto w = spec_gamma_check(make_zero_ring());
    CHECK(w.ok);
  }
}

namespace {

// Morphisms of the locally-ringed spaces Spec A -> Spec B, enumerated from
// first principles: a continuous point map plus a natural family of ring
// homs on sections whose induced stalk maps are local.
std::size_t count_spec_morphisms(const partial_ring& A, const partial_ring& B) {
  auto XA = spec(A);
  auto XB = spec(B);
  std::map<open_mask, sheaf_ring> shA, shB;
  for (open_mask u : XA.opens) shA.emplace(u, sheaf_sections(A, XA, u));
  for (open_mask v : XB.opens) shB.emplace(v, sheaf_sections(B, XB, v));

  std::size_t count = 0;
  std::vector<std::size_t> pmap(XA.points.size(), 0);
  auto preimage = [&](open_mask v) {
    open_mask u = 0;
    for (std::size_t xi = 0; xi < XA.points.size(); ++xi) {
      if (v & (open_mask(1) << pmap[xi])) u |= open_mask(1) << xi;
    }
    return u;
  };

  std::function<void(std::size_t)> try_point_maps = [&](std::size_t xi) {
    if (xi < XA.points.size()) {
      for (std::size_t yi = 0; yi < XB.points.size(); ++yi) {
        pmap[xi] = yi;
        try_point_maps(xi + 1);
      }
      return;
    }
    for (open_mask v : XB.opens) {
      if (!XA.is_open(preimage(v))) return;  // not continuous
    }
    // Candidate comorphism components per open of Y.
    std::vector<open_mask> vs(XB.opens.begin(), XB.opens.end());
    std::vector<std::vector<hom>> choices;
    for (open_mask v : vs) {
      choices.push_back(
          enumerate_homs(shB[v].ring, shA[preimage(v)].ring, level::ring));
    }
    std::vector<std::size_t> pick(vs.size(), 0);
    std::function<void(std::size_t)> try_components = [&](std::size_t k) {
      if (k < vs.size()) {
        for (pick[k] = 0; pick[k] < choices[k].size(); ++pick[k]) {
          try_components(k + 1);
        }
        return;
      }
      // Naturality with restrictions.
      for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = 0; j < vs.size(); ++j) {
          if ((vs[j] & vs[i]) != vs[j]) continue;
          auto resB = restriction_map(shB[vs[i]], shB[vs[j]]);
          auto resA =
              restriction_map(shA[preimage(vs[i])], shA[preimage(vs[j])]);
          // Applying then restricting must equal restricting then applying.
          if (compose(choices[i][pick[i]], resA) !=
              compose(resB, choices[j][pick[j]])) {
            return;
          }
        }
      }
      // Stalkwise locality via minimal opens.
      for (std::size_t xi = 0; xi < XA.points.size(); ++xi) {
        open_mask vmin = XB.basis[min_open_element(B, XB.points[pmap[xi]])];
        open_mask umin = XA.basis[min_open_element(A, XA.points[xi])];
        auto it = std::find(vs.begin(), vs.end(), vmin);
        std::size_t vi = static_cast<std::size_t>(it - vs.begin());
        auto res = restriction_map(shA[preimage(vmin)], shA[umin]);
        hom stalk_map = compose(choices[vi][pick[vi]], res);
        auto mx = is_local(shA[umin].ring);
        auto my = is_local(shB[vmin].ring);
        if (!mx || !my) return;
        if (pullback_ideal(shB[vmin].ring, shA[umin].ring, stalk_map, *mx) !=
            *my) {
          return;
        }
      }
      ++count;
    };
    try_components(0);
  };
  try_point_maps(0);
  return count;
}

}  // namespace

TEST_CASE("morphisms of spectra") {
  auto f1 = make_f1();
  auto z4 = make_zmod(4);
  auto z2 = make_f2();

  SECTION("identity induces the identity") {
    for (const auto& r : ring_corpus()) {
      auto X = spec(r.ring);
      auto m = spec_morphism(r.ring, r.ring, identity_hom(r.ring), X, X);
      for (std::size_t i = 0; i < X.points.size(); ++i) {
        CHECK(m.point_map[i] == i);
      }
    }
  }
  SECTION("Z/4 -> Z/2 reduction maps the unique point") {
    hom red{{0, 1, 0, 1}};
    auto XA = spec(z4);
    auto XB = spec(z2);
    auto m = spec_morphism(z4, z2, red, XA, XB);
    REQUIRE(m.point_map.size() == 1);
    CHECK(m.point_map[0] == 0);
  }
  SECTION("preimage of a basic open is the basic open of the image") {
    std::vector<std::pair<const partial_ring*, const partial_ring*>> pairs{
        {&z4, &z2}, {&f1, &z2}, {&f1, &f1}};
    auto p = product_ring(f1, f1);
    pairs.push_back({&f1, &p});
    for (auto [Bp, Ap] : pairs) {
      const auto& Ar = *Ap;
      const auto& Br = *Bp;
      auto XA = spec(Ar);
      auto XB = spec(Br);
      for (const auto& phi : enumerate_homs(Ar, Br, level::ring)) {
        auto m = spec_morphism(Ar, Br, phi, XA, XB);
        for (elem a = 0; a < Ar.size(); ++a) {
          open_mask expect = 0;
          for (std::size_t qi = 0; qi < XB.points.size(); ++qi) {
            if (XA.basis[a] & (open_mask(1) << m.point_map[qi])) {
              expect |= open_mask(1) << qi;
            }
          }
          CHECK(expect == XB.basis[phi(a)]);
        }
      }
    }
  }
  SECTION("morphism counts match hom counts into global sections") {
    std::vector<std::pair<const partial_ring*, const partial_ring*>> pairs;
    auto p = product_ring(f1, f1);
    auto bl = make_bool();
    pairs = {{&f1, &f1}, {&z4, &z2}, {&z2, &z4}, {&p, &f1},
             {&f1, &p},  {&bl, &f1}, {&z4, &z4}};
    for (auto [Ap, Bp] : pairs) {
      const auto& Ar = *Ap;
      const auto& Br = *Bp;
      auto G = gamma(Ar, spec(Ar));
      auto expected = enumerate_homs(Br, G.sections.ring, level::ring).size();
      CHECK(count_spec_morphisms(Ar, Br) == expected);
    }
  }
}
