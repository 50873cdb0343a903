// Shared fixtures and brute-force oracles for the test suites.  Everything
// here is deliberately independent of the library's search/closure code
// paths: oracles enumerate raw tables and raw maps.
#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pring/builtins.hpp"
#include "pring/structures.hpp"

namespace testsupport {

using pring::elem;
using pring::partial_magma;
using pring::partial_ring;

struct named_ring {
  std::string name;
  partial_ring ring;
};

// F1, F2, Z/3, Z/4, BOOL, F1xF1 -- the rings the paper's examples live on.
const std::vector<named_ring>& ring_corpus();

// Ring corpus plus a few bare monoids (the four-element monoid with a
// single nontrivial sum, truncated naturals).
const std::vector<named_ring>& small_ring_corpus();  // carriers <= 6
std::vector<std::pair<std::string, partial_magma>> monoid_corpus();

// {0,a,b,c} where a+b = c is the only nontrivial sum.
partial_magma make_pointed_pair_monoid();

// {0,1,2} < N with sums defined when they stay <= 2.
partial_magma make_truncated_n3();

// A ring that is not good at n = 2: sums 1+1 = 1, 2+2 = 2 only, with
// 2*2 = 0, so (1,1) is summable but its (1,2)-scaling is not.  Found by
// exhaustive search over partial rings of carrier size 3.
partial_ring make_nongood();

// All valid partial monoids on a labeled carrier of the given size
// (axioms (a),(b) hold by construction, (c) filtered by the validator).
std::vector<partial_magma> enumerate_partial_monoids(std::size_t size);

// All set partitions of {0..n-1} as relation matrices.
std::vector<pring::bitmat> all_partitions(std::size_t n);

// Raw |B|^|A| map enumeration; the oracle for enumerate_homs.
void for_each_map(std::size_t domain, std::size_t codomain,
                  const std::function<void(const std::vector<elem>&)>& fn);

// All multisets over {0..carrier-1} of size in [1, max_size].
std::vector<std::vector<elem>> all_multisets(std::size_t carrier,
                                             std::size_t max_size);

}  // namespace testsupport
