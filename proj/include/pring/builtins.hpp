// Stock rings: F1, F2 (= Z/2), BOOL and ZMOD(k), plus name-based lookup
// used by the CLI and the test corpus.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pring/homs.hpp"
#include "pring/structures.hpp"

namespace pring {

// {0,1} with 1+1 undefined.
inline partial_ring make_f1() {
  partial_magma m({"0", "1"}, 0);
  m.add_zero_sums();
  partial_ring r(std::move(m), 1);
  r.set_mul(0, 0, 0);
  r.set_mul(0, 1, 0);
  r.set_mul(1, 1, 1);
  return r;
}

// {0,1} with 1+1 = 1.
inline partial_ring make_bool() {
  partial_magma m({"0", "1"}, 0);
  m.add_zero_sums();
  m.set_sum(1, 1, 1);
  partial_ring r(std::move(m), 1);
  r.set_mul(0, 0, 0);
  r.set_mul(0, 1, 0);
  r.set_mul(1, 1, 1);
  return r;
}

inline partial_ring make_zmod(unsigned k) {
  if (k == 0) throw error("ZMOD modulus must be positive");
  std::vector<std::string> names;
  for (unsigned i = 0; i < k; ++i) names.push_back(std::to_string(i));
  partial_magma m(std::move(names), 0);
  for (elem a = 0; a < k; ++a) {
    for (elem b = 0; b < k; ++b) m.set_sum(a, b, (a + b) % k, false);
  }
  partial_ring r(std::move(m), k == 1 ? 0 : 1);
  for (elem a = 0; a < k; ++a) {
    for (elem b = 0; b < k; ++b) r.set_mul(a, b, (a * b) % k, false);
  }
  return r;
}

inline partial_ring make_f2() { return make_zmod(2); }

// One-element ring with 0 = 1.
inline partial_ring make_zero_ring() { return make_zmod(1); }

// Recognizes "F1", "F2", "BOOL", "ZMOD(k)" and the product shorthand
// "AxB" of two builtin names.
inline std::optional<partial_ring> builtin_ring(const std::string& name) {
  if (name == "F1") return make_f1();
  if (name == "F2") return make_f2();
  if (name == "BOOL") return make_bool();
  if (name.rfind("ZMOD(", 0) == 0 && name.back() == ')') {
    std::string digits = name.substr(5, name.size() - 6);
    if (digits.empty()) return std::nullopt;
    for (char c : digits) {
      if (c < '0' || c > '9') return std::nullopt;
    }
    return make_zmod(static_cast<unsigned>(std::stoul(digits)));
  }
  auto x = name.find('x');
  if (x != std::string::npos && x > 0 && x + 1 < name.size()) {
    auto lhs = builtin_ring(name.substr(0, x));
    auto rhs = builtin_ring(name.substr(x + 1));
    if (lhs && rhs) return product_ring(*lhs, *rhs);
  }
  return std::nullopt;
}

}  // namespace pring
