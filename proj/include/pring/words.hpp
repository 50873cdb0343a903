// Bounded word rewriting in free commutative monoids.
//
// Words are multisets of letters.  A word system carries the letters that
// may be dropped or inserted freely (they are equal to the empty word) and
// a merge table p + q -> r usable in both directions.  Equality queries run
// a breadth-first search over rewrites, bounded in word length and in
// visited states; answers are `equal` (a rewrite path was found), `distinct`
// (the reachable set under the length bound was exhausted) or `unknown`
// (state budget ran out).
#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pring/base.hpp"
#include "pring/structures.hpp"

namespace pring {

using word = std::vector<elem>;  // kept sorted

inline word sorted_word(word w) {
  std::sort(w.begin(), w.end());
  return w;
}

inline word concat_words(const word& a, const word& b) {
  word w;
  w.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(w));
  return w;
}

enum class eq_result { equal, distinct, unknown };

struct word_system {
  std::size_t alphabet = 0;
  std::vector<elem> droppable;                            // sorted
  std::vector<std::vector<elem>> merge;                   // results per (p,q)
  std::vector<std::vector<std::pair<elem, elem>>> splits; // by result letter

  const std::vector<elem>& merged(elem p, elem q) const {
    return merge[p * alphabet + q];
  }

  // A pair of letters may merge to several results (e.g. along either
  // component of a tensor letter); all of them are sound rewrites.
  void add_merge(elem p, elem q, elem r) {
    auto& fwd = merge[p * alphabet + q];
    if (std::find(fwd.begin(), fwd.end(), r) == fwd.end()) fwd.push_back(r);
    auto& bwd = merge[q * alphabet + p];
    if (std::find(bwd.begin(), bwd.end(), r) == bwd.end()) bwd.push_back(r);
  }

  void build_splits() {
    splits.assign(alphabet, {});
    for (elem p = 0; p < alphabet; ++p) {
      for (elem q = p; q < alphabet; ++q) {
        for (elem r : merged(p, q)) splits[r].emplace_back(p, q);
      }
    }
  }
};

// Letters are the carrier of A; merging follows the partial sum, the zero
// letter is droppable.  This realizes the defining relations of the monoid
// completion of A.
inline word_system word_system_of(const partial_magma& A) {
  word_system ws;
  ws.alphabet = A.size();
  ws.droppable = {A.zero()};
  ws.merge.assign(ws.alphabet * ws.alphabet, {});
  for (elem a = 0; a < A.size(); ++a) {
    for (elem b = a; b < A.size(); ++b) {
      if (A.summable(a, b)) ws.add_merge(a, b, A.add(a, b));
    }
  }
  ws.build_splits();
  return ws;
}

namespace detail {

// Enumerates all words one rewrite away from w whose length stays within
// the bound, passing each to fn.
template <typename Fn>
void for_each_rewrite(const word_system& ws, const word& w,
                      std::size_t max_len, Fn&& fn) {
  // Drop one droppable occurrence.
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0 && w[i] == w[i - 1]) continue;
    if (!std::binary_search(ws.droppable.begin(), ws.droppable.end(), w[i])) {
      continue;
    }
    word m = w;
    m.erase(m.begin() + static_cast<std::ptrdiff_t>(i));
    fn(std::move(m));
  }
  // Insert a droppable letter.
  if (w.size() + 1 <= max_len) {
    for (elem z : ws.droppable) {
      word m = w;
      m.insert(std::upper_bound(m.begin(), m.end(), z), z);
      fn(std::move(m));
    }
  }
  // Merge two occurrences.
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0 && w[i] == w[i - 1]) continue;
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (j > i + 1 && w[j] == w[j - 1]) continue;
      for (elem r : ws.merged(w[i], w[j])) {
        word m;
        m.reserve(w.size() - 1);
        for (std::size_t k = 0; k < w.size(); ++k) {
          if (k != i && k != j) m.push_back(w[k]);
        }
        m.insert(std::upper_bound(m.begin(), m.end(), r), r);
        fn(std::move(m));
      }
    }
  }
  // Split one occurrence.
  if (w.size() + 1 <= max_len) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i > 0 && w[i] == w[i - 1]) continue;
      for (auto [p, q] : ws.splits[w[i]]) {
        word m;
        m.reserve(w.size() + 1);
        for (std::size_t k = 0; k < w.size(); ++k) {
          if (k != i) m.push_back(w[k]);
        }
        m.insert(std::upper_bound(m.begin(), m.end(), p), p);
        m.insert(std::upper_bound(m.begin(), m.end(), q), q);
        fn(std::move(m));
      }
    }
  }
}

struct reach_search {
  std::set<word> visited;
  bool exhausted = false;  // reachable set complete under the bound
};

// BFS over rewrites from w0.  Stops early once `until` returns true.
template <typename Until>
reach_search reachable_words(const word_system& ws, const word& w0,
                             std::size_t max_len, std::size_t max_states,
                             Until&& until) {
  reach_search rs;
  std::deque<word> frontier;
  rs.visited.insert(w0);
  frontier.push_back(w0);
  if (until(w0)) return rs;
  while (!frontier.empty()) {
    word w = std::move(frontier.front());
    frontier.pop_front();
    bool stop = false;
    for_each_rewrite(ws, w, max_len, [&](word m) {
      if (stop) return;
      if (rs.visited.size() >= max_states) return;
      if (rs.visited.insert(m).second) {
        if (until(m)) {
          stop = true;
          return;
        }
        frontier.push_back(std::move(m));
      }
    });
    if (stop) return rs;
    if (rs.visited.size() >= max_states) return rs;  // budget: not exhausted
  }
  rs.exhausted = true;
  return rs;
}

}  // namespace detail

// Word equality in the monoid completion, bounded as described above.  The
// length bound is max(|w1|, |w2|) + 4: rewrites change length by at most
// one, and the slack keeps merge-through-zero paths available.
inline eq_result words_equal(const word_system& ws, word w1, word w2,
                             const budget& bgt = {},
                             std::size_t extra_len = 4) {
  w1 = sorted_word(std::move(w1));
  w2 = sorted_word(std::move(w2));
  if (w1 == w2) return eq_result::equal;
  std::size_t max_len = std::max(w1.size(), w2.size()) + extra_len;
  bool found = false;
  auto rs = detail::reachable_words(ws, w1, max_len, bgt.max_states,
                                    [&](const word& w) {
                                      found = (w == w2);
                                      return found;
                                    });
  if (found) return eq_result::equal;
  return rs.exhausted ? eq_result::distinct : eq_result::unknown;
}

// Word equality over the carrier of a partial monoid; the public form of
// the query.
inline eq_result amon_equal(const partial_magma& A, const word& w1,
                            const word& w2, const budget& bgt = {}) {
  return words_equal(word_system_of(A), w1, w2, bgt);
}

// ---------------------------------------------------------------------------
// Class registry: names equivalence classes of words by representatives,
// with identity decided by the bounded search.

class class_registry {
 public:
  class_registry(const word_system& ws, budget bgt)
      : ws_(&ws), bgt_(bgt) {}

  std::size_t size() const { return reps_.size(); }
  const word& rep(elem c) const { return reps_[c]; }
  const std::vector<word>& reps() const { return reps_; }

  // Finds the class of w among known representatives.  A single bounded
  // search from w decides all candidates at once.
  std::optional<elem> find(const word& w) const {
    word sw = sorted_word(w);
    std::size_t max_len = sw.size();
    for (const auto& r : reps_) max_len = std::max(max_len, r.size());
    max_len += 4;

    std::optional<elem> hit;
    std::map<word, elem> targets;
    for (elem i = 0; i < reps_.size(); ++i) targets[reps_[i]] = i;
    auto rs = detail::reachable_words(*ws_, sw, max_len, bgt_.max_states,
                                      [&](const word& x) {
                                        auto it = targets.find(x);
                                        if (it == targets.end()) return false;
                                        hit = it->second;
                                        return true;
                                      });
    if (hit) return hit;
    if (!rs.exhausted) {
      throw budget_error("word class lookup exhausted the state budget",
                         rs.visited.size());
    }
    return std::nullopt;
  }

  elem find_or_add(const word& w, const std::string& name) {
    if (auto c = find(w)) return *c;
    if (reps_.size() >= bgt_.max_elements) {
      throw budget_error("class registry exceeded the element budget",
                         reps_.size());
    }
    reps_.push_back(sorted_word(w));
    names_.push_back(name);
    return static_cast<elem>(reps_.size() - 1);
  }

  const std::vector<std::string>& names() const { return names_; }

 private:
  const word_system* ws_;
  budget bgt_;
  std::vector<word> reps_;
  std::vector<std::string> names_;
};

// ---------------------------------------------------------------------------
// Saturation to the smallest partial monoid containing an initial partial
// magma, carried out inside the monoid completion.  New elements b+c are
// adjoined whenever (a+b)+c can already be calculated, together with the
// pairs (b,c), (c,b), (a,b+c), (b+c,a) and the zero pairs.

struct closure_result {
  partial_magma monoid;            // validated
  std::vector<word> reps;          // representative word per element
  std::vector<elem> init_class;    // class of each initial element
  elem zero_class = 0;
};

namespace detail {

inline std::string word_name(const std::vector<std::string>& letter_names,
                             const std::string& zero_name, const word& w) {
  if (w.empty()) return zero_name;
  if (w.size() == 1) return letter_names[w[0]];
  std::string nm = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) nm += "+";
    nm += letter_names[w[i]];
  }
  nm += ")";
  return nm;
}

}  // namespace detail

inline closure_result monoid_closure(const word_system& ws,
                                     const std::vector<word>& init_elems,
                                     const std::vector<std::pair<word, word>>& init_pairs,
                                     const std::vector<std::string>& letter_names,
                                     const std::string& zero_name,
                                     const budget& bgt = {}) {
  class_registry reg(ws, bgt);
  auto nm = [&](const word& w) {
    return detail::word_name(letter_names, zero_name, w);
  };
  elem zero_cls = reg.find_or_add({}, zero_name);

  std::vector<elem> init_class;
  for (const auto& w : init_elems) {
    init_class.push_back(reg.find_or_add(w, nm(w)));
  }

  std::map<std::pair<elem, elem>, elem> pairs;
  auto add_pair = [&](elem u, elem v, elem s) {
    auto [it, inserted] = pairs.emplace(std::make_pair(u, v), s);
    if (!inserted && it->second != s) {
      throw check_error("monoid closure derived conflicting sums for a pair");
    }
    return inserted;
  };

  auto sum_class = [&](elem u, elem v) {
    word w = concat_words(reg.rep(u), reg.rep(v));
    return reg.find_or_add(w, nm(w));
  };

  for (const auto& [wa, wb] : init_pairs) {
    elem u = reg.find_or_add(wa, nm(wa));
    elem v = reg.find_or_add(wb, nm(wb));
    elem s = sum_class(u, v);
    add_pair(u, v, s);
    add_pair(v, u, s);
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (elem e = 0; e < reg.size(); ++e) {
      if (add_pair(zero_cls, e, e)) changed = true;
      if (add_pair(e, zero_cls, e)) changed = true;
    }
    // Snapshot: saturation rounds follow the inductive construction.
    std::vector<std::pair<std::pair<elem, elem>, elem>> snapshot(pairs.begin(),
                                                                 pairs.end());
    std::size_t elems_before = reg.size();
    for (const auto& [ab, s_ab] : snapshot) {
      auto [a, b] = ab;
      for (elem c = 0; c < elems_before; ++c) {
        auto it = pairs.find({s_ab, c});
        if (it == pairs.end()) continue;
        elem s_abc = it->second;  // class of a+b+c
        elem bc = sum_class(b, c);
        if (add_pair(b, c, bc)) changed = true;
        if (add_pair(c, b, bc)) changed = true;
        if (add_pair(a, bc, s_abc)) changed = true;
        if (add_pair(bc, a, s_abc)) changed = true;
      }
    }
    if (reg.size() > elems_before) changed = true;
  }

  std::vector<std::string> names = reg.names();
  // Representative words can collide on rendered names; disambiguate.
  {
    std::map<std::string, int> seen;
    for (auto& n : names) {
      int k = seen[n]++;
      if (k) n += "#" + std::to_string(k);
    }
  }
  partial_magma M(names, zero_cls);
  for (const auto& [uv, s] : pairs) M.set_sum(uv.first, uv.second, s, false);
  require_valid(M, level::monoid, "monoid closure result");

  closure_result out;
  out.monoid = std::move(M);
  out.reps = reg.reps();
  out.init_class = std::move(init_class);
  out.zero_class = zero_cls;
  return out;
}

// ---------------------------------------------------------------------------
// Associative closure of a partial magma: the universal partial monoid it
// maps to, with the canonical map alpha.

struct associative_closure_result {
  partial_magma monoid;
  hom alpha;                 // A -> monoid
  std::vector<word> reps;
};

inline associative_closure_result associative_closure(const partial_magma& A,
                                                      const budget& bgt = {}) {
  require_valid(A, level::magma, "associative_closure input");
  word_system ws = word_system_of(A);

  std::vector<word> init;
  for (elem a = 0; a < A.size(); ++a) init.push_back({a});
  std::vector<std::pair<word, word>> init_pairs;
  for (elem a = 0; a < A.size(); ++a) {
    for (elem b = 0; b < A.size(); ++b) {
      if (A.summable(a, b)) init_pairs.push_back({{a}, {b}});
    }
  }
  auto closed = monoid_closure(ws, init, init_pairs, A.names(),
                               A.name(A.zero()), bgt);

  associative_closure_result out;
  out.alpha = hom{closed.init_class};
  out.monoid = std::move(closed.monoid);
  out.reps = std::move(closed.reps);
  if (!is_magma_hom(A, out.monoid, out.alpha)) {
    throw check_error("associative closure: canonical map is not a homomorphism");
  }
  return out;
}

}  // namespace pring
