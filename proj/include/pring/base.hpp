// Shared primitives: element indices, dense bit matrices, budgets and the
// error hierarchy used across the library.
#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace pring {

// Carrier elements are indices into a name table owned by the structure.
using elem = std::uint32_t;

inline constexpr elem undef = std::numeric_limits<elem>::max();

// Caps for the open-ended searches (saturation, rewriting, backtracking).
struct budget {
  std::size_t max_elements   = 512;        // new carrier elements per saturation
  std::size_t max_states     = 100'000;    // rewrite states per word query
  std::size_t max_candidates = 5'000'000;  // nodes visited by enumerations/solvers
};

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class parse_error : public error {
 public:
  using error::error;
};

class budget_error : public error {
 public:
  budget_error(const std::string& what, std::size_t used)
      : error(what + " (used " + std::to_string(used) + ")"), used(used) {}
  std::size_t used;
};

// An internal consistency check failed; indicates a bug or a malformed input
// that slipped past validation.
class check_error : public error {
 public:
  using error::error;
};

// Square bit matrix, row-major over 64-bit words.
class bitmat {
 public:
  bitmat() = default;
  explicit bitmat(std::size_t n)
      : n_(n), row_words_((n + 63) / 64), w_(n * row_words_, 0) {}

  std::size_t size() const { return n_; }

  bool get(std::size_t i, std::size_t j) const {
    return (w_[i * row_words_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool v = true) {
    auto& word = w_[i * row_words_ + j / 64];
    if (v) {
      word |= std::uint64_t(1) << (j % 64);
    } else {
      word &= ~(std::uint64_t(1) << (j % 64));
    }
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        c += get(i, j);
      }
    }
    return c;
  }

  friend bool operator==(const bitmat&, const bitmat&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t row_words_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace pring
