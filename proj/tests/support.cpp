#include "support.hpp"

#include <algorithm>

#include "pring/homs.hpp"

namespace testsupport {

using namespace pring;

const std::vector<named_ring>& ring_corpus() {
  static const std::vector<named_ring> corpus = [] {
    std::vector<named_ring> v;
    v.push_back({"F1", make_f1()});
    v.push_back({"F2", make_f2()});
    v.push_back({"Z3", make_zmod(3)});
    v.push_back({"Z4", make_zmod(4)});
    v.push_back({"BOOL", make_bool()});
    v.push_back({"F1xF1", product_ring(make_f1(), make_f1())});
    return v;
  }();
  return corpus;
}

const std::vector<named_ring>& small_ring_corpus() {
  static const std::vector<named_ring> corpus = [] {
    std::vector<named_ring> v = ring_corpus();
    v.push_back({"Z6", make_zmod(6)});
    v.push_back({"F1xBOOL", product_ring(make_f1(), make_bool())});
    v.push_back({"ZERO", make_zero_ring()});
    return v;
  }();
  return corpus;
}

partial_magma make_pointed_pair_monoid() {
  partial_magma m({"0", "a", "b", "c"}, 0);
  m.add_zero_sums();
  m.set_sum(1, 2, 3);
  return m;
}

partial_magma make_truncated_n3() {
  partial_magma m({"0", "1", "2"}, 0);
  m.add_zero_sums();
  m.set_sum(1, 1, 2);
  return m;
}

partial_ring make_nongood() {
  partial_magma m({"0", "1", "2"}, 0);
  m.add_zero_sums();
  m.set_sum(1, 1, 1);
  m.set_sum(2, 2, 2);
  partial_ring r(std::move(m), 1);
  r.set_mul(0, 0, 0);
  r.set_mul(0, 1, 0);
  r.set_mul(0, 2, 0);
  r.set_mul(1, 1, 1);
  r.set_mul(1, 2, 2);
  r.set_mul(2, 2, 0);
  return r;
}

std::vector<std::pair<std::string, partial_magma>> monoid_corpus() {
  std::vector<std::pair<std::string, partial_magma>> v;
  for (const auto& nr : small_ring_corpus()) v.emplace_back(nr.name, nr.ring);
  v.emplace_back("pointed-pair", make_pointed_pair_monoid());
  v.emplace_back("truncated-N3", make_truncated_n3());
  return v;
}

std::vector<partial_magma> enumerate_partial_monoids(std::size_t size) {
  std::vector<partial_magma> out;
  if (size == 0) return out;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < size; ++i) names.push_back(std::to_string(i));

  // Unordered pairs of nonzero elements; each sums to one of `size` values
  // or stays undefined.
  std::vector<std::pair<elem, elem>> slots;
  for (elem a = 1; a < size; ++a) {
    for (elem b = a; b < size; ++b) slots.emplace_back(a, b);
  }
  const std::size_t options = size + 1;
  std::vector<std::size_t> choice(slots.size(), 0);
  while (true) {
    partial_magma m(names, 0);
    m.add_zero_sums();
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (choice[i] < size) {
        m.set_sum(slots[i].first, slots[i].second,
                  static_cast<elem>(choice[i]));
      }
    }
    if (validate(m, level::monoid).ok()) out.push_back(std::move(m));

    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == options) choice[k++] = 0;
    if (k == choice.size()) break;
  }
  return out;
}

std::vector<bitmat> all_partitions(std::size_t n) {
  std::vector<bitmat> out;
  // Restricted growth strings.
  std::vector<std::size_t> rgs(n, 0);
  auto emit = [&] {
    bitmat rel(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (rgs[i] == rgs[j]) rel.set(i, j);
      }
    }
    out.push_back(std::move(rel));
  };
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i,
                                                          std::size_t maxv) {
    if (i == n) {
      emit();
      return;
    }
    for (std::size_t v = 0; v <= maxv + 1 && v < n; ++v) {
      rgs[i] = v;
      rec(i + 1, std::max(maxv, v));
    }
  };
  if (n == 0) return out;
  rgs[0] = 0;
  rec(1, 0);
  return out;
}

void for_each_map(std::size_t domain, std::size_t codomain,
                  const std::function<void(const std::vector<elem>&)>& fn) {
  std::vector<elem> f(domain, 0);
  while (true) {
    fn(f);
    std::size_t k = 0;
    while (k < domain && ++f[k] == codomain) f[k++] = 0;
    if (k == domain) break;
  }
}

std::vector<std::vector<elem>> all_multisets(std::size_t carrier,
                                             std::size_t max_size) {
  std::vector<std::vector<elem>> out;
  std::vector<elem> cur;
  std::function<void(elem, std::size_t)> rec = [&](elem start,
                                                   std::size_t left) {
    if (!cur.empty()) out.push_back(cur);
    if (left == 0) return;
    for (elem e = start; e < carrier; ++e) {
      cur.push_back(e);
      rec(e, left - 1);
      cur.pop_back();
    }
  };
  rec(0, max_size);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace testsupport
