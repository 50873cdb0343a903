// The prime spectrum of a finite partial ring: Zariski topology, presheaf
// of localizations, its sheafification by germ families, global sections
// and the Spec-of-global-sections comparison.
//
// Opens are bitmasks over the (finite) point list.  Every point p has a
// minimal open neighborhood D(m_p), m_p the product of all elements
// outside p, which makes sheafification a direct, certifiable computation.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pring/base.hpp"
#include "pring/commalg.hpp"
#include "pring/homs.hpp"
#include "pring/structures.hpp"

namespace pring {

using open_mask = std::uint32_t;

struct spectrum {
  std::vector<ideal> points;        // sorted prime ideals
  std::vector<open_mask> basis;     // D(a), indexed by carrier element
  std::vector<open_mask> opens;     // the whole topology, sorted masks
  open_mask whole = 0;

  std::size_t npoints() const { return points.size(); }

  bool is_open(open_mask u) const {
    return std::binary_search(opens.begin(), opens.end(), u);
  }

  // Points of U in position order.
  std::vector<std::size_t> point_list(open_mask u) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (u & (open_mask(1) << i)) out.push_back(i);
    }
    return out;
  }

  open_mask closed_set(const ideal& a) const {  // V(a): primes containing a
    open_mask v = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (std::includes(points[i].elems.begin(), points[i].elems.end(),
                        a.elems.begin(), a.elems.end())) {
        v |= open_mask(1) << i;
      }
    }
    return v;
  }
};

inline spectrum spec(const partial_ring& A, const budget& bgt = {}) {
  spectrum X;
  X.points = primes(A, bgt);
  if (X.points.size() > 31) {
    throw budget_error("spectrum has too many points for mask opens",
                       X.points.size());
  }
  X.whole = static_cast<open_mask>((open_mask(1) << X.points.size()) - 1);
  X.basis.resize(A.size());
  for (elem a = 0; a < A.size(); ++a) {
    open_mask d = 0;
    for (std::size_t i = 0; i < X.points.size(); ++i) {
      if (!X.points[i].contains(a)) d |= open_mask(1) << i;
    }
    X.basis[a] = d;
  }
  std::set<open_mask> opens{0};
  for (open_mask d : X.basis) opens.insert(d);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<open_mask> cur(opens.begin(), opens.end());
    for (open_mask u : cur) {
      for (open_mask v : cur) {
        if (opens.insert(u | v).second) changed = true;
      }
    }
  }
  X.opens.assign(opens.begin(), opens.end());
  return X;
}

// Product of all elements outside p; D(m_p) is the minimal open
// neighborhood of p (primes are closed under products of non-members).
inline elem min_open_element(const partial_ring& A, const ideal& p) {
  elem m = A.one();
  for (elem a = 0; a < A.size(); ++a) {
    if (!p.contains(a)) m = A.mul(m, a);
  }
  return m;
}

inline localized_ring stalk(const partial_ring& A, const ideal& p) {
  auto loc = localize_at_prime(A, p);
  if (!is_local(loc.ring)) throw check_error("stalk is not a local ring");
  return loc;
}

// S_U = elements invertible everywhere on U.
inline std::vector<elem> section_mult_set(const partial_ring& A,
                                          const spectrum& X, open_mask u) {
  std::vector<elem> S;
  for (elem a = 0; a < A.size(); ++a) {
    bool ok = true;
    for (std::size_t i : X.point_list(u)) {
      if (X.points[i].contains(a)) ok = false;
    }
    if (ok) S.push_back(a);
  }
  return S;
}

inline localized_ring presheaf_sections(const partial_ring& A,
                                        const spectrum& X, open_mask u) {
  return localize(A, section_mult_set(A, X, u));
}

// ---------------------------------------------------------------------------
// Sheafification.

struct section_certificate {
  std::size_t point;   // position in the spectrum's point list
  open_mask basic;     // D(m_p), the minimal open used
  elem num, den;       // presheaf fraction matching the germs there
};

struct sheaf_ring {
  partial_ring ring;                         // carrier = sections over U
  open_mask open = 0;
  std::vector<std::size_t> point_ids;        // positions of U's points
  std::vector<localized_ring> stalks;        // parallel to point_ids
  std::vector<std::vector<elem>> families;   // germ family per section
  std::vector<std::vector<section_certificate>> certificates;

  std::optional<elem> find_section(const std::vector<elem>& family) const {
    for (elem s = 0; s < families.size(); ++s) {
      if (families[s] == family) return s;
    }
    return std::nullopt;
  }
};

// Sections over U: stalk-element families that are locally presheaf
// fractions.  On the minimal open of each point the fraction is recorded
// as a certificate.
inline sheaf_ring sheaf_sections(const partial_ring& A, const spectrum& X,
                                 open_mask u, const budget& bgt = {}) {
  if (!X.is_open(u)) throw error("sheaf_sections: the set is not open");
  sheaf_ring out;
  out.open = u;
  out.point_ids = X.point_list(u);
  const std::size_t k = out.point_ids.size();
  for (std::size_t i : out.point_ids) out.stalks.push_back(stalk(A, X.points[i]));

  // Per point: the minimal open, its presheaf ring, and the patch list of
  // germ families over it.
  struct patch_data {
    open_mask basic;
    std::vector<std::size_t> local;               // positions into point_ids
    std::vector<std::vector<elem>> germ_vectors;  // one per presheaf class
    std::vector<std::pair<elem, elem>> fraction;  // representative (num, den)
  };
  std::vector<patch_data> patches(k);
  for (std::size_t pi = 0; pi < k; ++pi) {
    const ideal& p = X.points[out.point_ids[pi]];
    patch_data pd;
    pd.basic = X.basis[min_open_element(A, p)];
    for (std::size_t qi = 0; qi < k; ++qi) {
      if (pd.basic & (open_mask(1) << out.point_ids[qi])) pd.local.push_back(qi);
    }
    auto pre = presheaf_sections(A, X, pd.basic);
    std::set<std::vector<elem>> seen;
    for (elem a = 0; a < A.size(); ++a) {
      for (elem s : pre.mult_set) {
        std::vector<elem> germs;
        for (std::size_t qi : pd.local) germs.push_back(out.stalks[qi].frac(a, s));
        if (seen.insert(germs).second) {
          pd.germ_vectors.push_back(germs);
          pd.fraction.emplace_back(a, s);
        }
      }
    }
    patches[pi] = std::move(pd);
  }

  // Enumerate candidate families with a budget guard.
  double space = 1;
  for (const auto& st : out.stalks) {
    space *= static_cast<double>(st.ring.size());
    if (space > static_cast<double>(bgt.max_candidates)) {
      throw budget_error("sheaf section space exceeds budget", k);
    }
  }
  std::vector<elem> family(k, 0);
  for (;;) {
    bool good = true;
    std::vector<section_certificate> certs;
    for (std::size_t pi = 0; pi < k && good; ++pi) {
      const auto& pd = patches[pi];
      std::vector<elem> local;
      for (std::size_t qi : pd.local) local.push_back(family[qi]);
      bool matched = false;
      for (std::size_t gi = 0; gi < pd.germ_vectors.size(); ++gi) {
        if (pd.germ_vectors[gi] == local) {
          certs.push_back({out.point_ids[pi], pd.basic, pd.fraction[gi].first,
                           pd.fraction[gi].second});
          matched = true;
          break;
        }
      }
      good = matched;
    }
    if (good) {
      out.families.push_back(family);
      out.certificates.push_back(std::move(certs));
    }
    if (k == 0) break;
    std::size_t i = 0;
    while (i < k && ++family[i] == out.stalks[i].ring.size()) family[i++] = 0;
    if (i == k) break;
  }

  // Ring structure: pointwise, summable iff summable in every stalk.
  std::vector<std::string> names;
  for (const auto& f : out.families) {
    std::string nm = "<";
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) nm += ",";
      nm += out.stalks[i].ring.name(f[i]);
    }
    nm += ">";
    names.push_back(std::move(nm));
  }
  std::vector<elem> zero_family, one_family;
  for (const auto& st : out.stalks) {
    zero_family.push_back(st.ring.zero());
    one_family.push_back(st.ring.one());
  }
  auto zero_idx = out.find_section(zero_family);
  auto one_idx = out.find_section(one_family);
  if (!zero_idx || !one_idx) {
    throw check_error("sheaf_sections: constant sections missing");
  }
  partial_magma m(names, *zero_idx);
  const std::size_t n = out.families.size();
  for (elem f = 0; f < n; ++f) {
    for (elem g = f; g < n; ++g) {
      bool summable = true;
      std::vector<elem> sum(k);
      for (std::size_t i = 0; i < k && summable; ++i) {
        const auto& st = out.stalks[i].ring;
        if (!st.summable(out.families[f][i], out.families[g][i])) {
          summable = false;
        } else {
          sum[i] = st.add(out.families[f][i], out.families[g][i]);
        }
      }
      if (!summable) continue;
      auto s = out.find_section(sum);
      if (!s) throw check_error("sheaf_sections: pointwise sum left the sections");
      m.set_sum(f, g, *s);
    }
  }
  partial_ring R(std::move(m), *one_idx);
  for (elem f = 0; f < n; ++f) {
    for (elem g = f; g < n; ++g) {
      std::vector<elem> prod(k);
      for (std::size_t i = 0; i < k; ++i) {
        prod[i] = out.stalks[i].ring.mul(out.families[f][i], out.families[g][i]);
      }
      auto s = out.find_section(prod);
      if (!s) throw check_error("sheaf_sections: pointwise product left the sections");
      R.set_mul(f, g, *s);
    }
  }
  require_valid(R, "sheaf section ring");
  out.ring = std::move(R);
  return out;
}

// Restriction O(U) -> O(V) for open V inside U.
inline hom restriction_map(const sheaf_ring& over_u, const sheaf_ring& over_v) {
  if ((over_v.open & over_u.open) != over_v.open) {
    throw error("restriction_map: target open is not contained in source");
  }
  std::vector<std::size_t> where;
  for (std::size_t id : over_v.point_ids) {
    auto it = std::find(over_u.point_ids.begin(), over_u.point_ids.end(), id);
    where.push_back(static_cast<std::size_t>(it - over_u.point_ids.begin()));
  }
  hom h;
  for (const auto& f : over_u.families) {
    std::vector<elem> g;
    for (std::size_t w : where) g.push_back(f[w]);
    auto s = over_v.find_section(g);
    if (!s) throw check_error("restriction_map: restricted family is not a section");
    h.map.push_back(*s);
  }
  if (!is_ring_hom(over_u.ring, over_v.ring, h)) {
    throw check_error("restriction_map: restriction is not a ring homomorphism");
  }
  return h;
}

// ---------------------------------------------------------------------------
// Global sections.

struct gamma_result {
  sheaf_ring sections;                  // over the whole space
  hom gamma;                            // A -> sections.ring
  std::vector<elem> integral_witness;   // per section: s with s*sigma in im(gamma)
};

inline gamma_result gamma(const partial_ring& A, const spectrum& X,
                          const budget& bgt = {}) {
  gamma_result out;
  out.sections = sheaf_sections(A, X, X.whole, bgt);
  for (elem a = 0; a < A.size(); ++a) {
    std::vector<elem> fam;
    for (std::size_t i = 0; i < out.sections.point_ids.size(); ++i) {
      fam.push_back(out.sections.stalks[i].frac(a, A.one()));
    }
    auto s = out.sections.find_section(fam);
    if (!s) throw check_error("gamma: a/1 germ family is not a section");
    out.gamma.map.push_back(*s);
  }
  if (!is_ring_hom(A, out.sections.ring, out.gamma)) {
    throw check_error("gamma is not a ring homomorphism");
  }
  // Every global section becomes integral after one multiplication.
  const auto& B = out.sections.ring;
  for (elem sec = 0; sec < B.size(); ++sec) {
    std::optional<elem> witness;
    for (elem s = 0; s < A.size() && !witness; ++s) {
      elem scaled = B.mul(out.gamma.map[s], sec);
      for (elem a = 0; a < A.size() && !witness; ++a) {
        if (out.gamma.map[a] == scaled) witness = s;
      }
    }
    if (!witness) throw check_error("gamma: no integrality witness for a section");
    out.integral_witness.push_back(*witness);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Morphisms of spectra.

struct spec_morphism_data {
  std::vector<std::size_t> point_map;  // position in X_B -> position in X_A
  std::vector<hom> stalk_maps;         // A_{f(q)} -> B_q per point of X_B
};

// The continuous map induced by a ring homomorphism phi: A -> B, with its
// stalkwise local homomorphisms a/s -> phi(a)/phi(s).
inline spec_morphism_data spec_morphism(const partial_ring& A,
                                        const partial_ring& B, const hom& phi,
                                        const spectrum& XA, const spectrum& XB) {
  if (!is_ring_hom(A, B, phi)) throw error("spec_morphism: not a ring hom");
  spec_morphism_data out;
  for (std::size_t qi = 0; qi < XB.points.size(); ++qi) {
    ideal pre = pullback_ideal(A, B, phi, XB.points[qi]);
    auto it = std::find(XA.points.begin(), XA.points.end(), pre);
    if (it == XA.points.end()) {
      throw check_error("spec_morphism: preimage of a prime is not prime");
    }
    out.point_map.push_back(static_cast<std::size_t>(it - XA.points.begin()));
  }
  for (std::size_t qi = 0; qi < XB.points.size(); ++qi) {
    auto src = stalk(A, XA.points[out.point_map[qi]]);
    auto dst = stalk(B, XB.points[qi]);
    hom h;
    h.map.resize(src.ring.size());
    std::vector<bool> set(src.ring.size(), false);
    for (elem a = 0; a < A.size(); ++a) {
      for (elem s : src.mult_set) {
        elem from = src.frac(a, s);
        elem to = dst.frac(phi(a), phi(s));
        if (set[from] && h.map[from] != to) {
          throw check_error("spec_morphism: stalk map is ill-defined");
        }
        h.map[from] = to;
        set[from] = true;
      }
    }
    if (!is_ring_hom(src.ring, dst.ring, h)) {
      throw check_error("spec_morphism: stalk map is not a ring hom");
    }
    // Local: the maximal ideal pulls back to the maximal ideal.
    auto m_src = is_local(src.ring);
    auto m_dst = is_local(dst.ring);
    if (!m_src || !m_dst ||
        pullback_ideal(src.ring, dst.ring, h, *m_dst) != *m_src) {
      throw check_error("spec_morphism: stalk map is not local");
    }
    out.stalk_maps.push_back(std::move(h));
  }
  return out;
}

// ---------------------------------------------------------------------------
// The Spec vs global-sections comparison.

struct spec_gamma_witness {
  bool ok = false;
  std::string detail;
  std::vector<std::size_t> point_map;  // X_B -> X_A
};

// Builds B = Gamma(Spec A), maps Spec B back along gamma and verifies a
// homeomorphism with stalkwise isomorphisms.
inline spec_gamma_witness spec_gamma_check(const partial_ring& A,
                                           const budget& bgt = {}) {
  spec_gamma_witness w;
  auto XA = spec(A, bgt);
  auto G = gamma(A, XA, bgt);
  const partial_ring& B = G.sections.ring;
  auto XB = spec(B, bgt);

  if (XA.points.size() != XB.points.size()) {
    w.detail = "point counts differ";
    return w;
  }
  spec_morphism_data mor;
  try {
    mor = spec_morphism(A, B, G.gamma, XA, XB);
  } catch (const check_error& e) {
    w.detail = e.what();
    return w;
  }
  w.point_map = mor.point_map;
  std::vector<bool> hit(XA.points.size(), false);
  for (std::size_t p : mor.point_map) hit[p] = true;
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
    w.detail = "point map is not a bijection";
    return w;
  }
  // Both-ways continuity over materialized opens.
  auto push = [&](open_mask v) {
    open_mask u = 0;
    for (std::size_t qi = 0; qi < XB.points.size(); ++qi) {
      if (v & (open_mask(1) << qi)) u |= open_mask(1) << mor.point_map[qi];
    }
    return u;
  };
  for (open_mask v : XB.opens) {
    if (!XA.is_open(push(v))) {
      w.detail = "image of an open is not open";
      return w;
    }
  }
  for (open_mask u : XA.opens) {
    open_mask v = 0;
    for (std::size_t qi = 0; qi < XB.points.size(); ++qi) {
      if (u & (open_mask(1) << mor.point_map[qi])) v |= open_mask(1) << qi;
    }
    if (!XB.is_open(v)) {
      w.detail = "preimage of an open is not open";
      return w;
    }
  }
  // Stalk maps must be isomorphisms.
  for (std::size_t qi = 0; qi < XB.points.size(); ++qi) {
    if (!is_injective(mor.stalk_maps[qi])) {
      w.detail = "stalk map not injective";
      return w;
    }
    auto src = stalk(A, XA.points[mor.point_map[qi]]);
    auto dst = stalk(B, XB.points[qi]);
    if (src.ring.size() != dst.ring.size()) {
      w.detail = "stalk sizes differ";
      return w;
    }
  }
  w.ok = true;
  return w;
}

}  // namespace pring
