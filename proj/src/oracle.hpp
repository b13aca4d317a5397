#ifndef PERIND_ORACLE_HPP
#define PERIND_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arith.hpp"

namespace perind::oracle {

/// Coin-problem reachability by direct dynamic programming over [0, target].
bool naive_representable(const std::vector<uint64_t>& gens, uint64_t target);

/// Carries when adding k and n-k in base p (Kummer's count).
unsigned kummer_carries(uint64_t p, uint64_t n, uint64_t k);

/// Every (degree, weight) pair reachable from (n, 1 mod m) with all degrees
/// <= bound, by worklist closure over the five moves. Stabilization ranges
/// over all Supp(m)-smooth ranks and tensor powers are uncapped.
std::set<std::pair<uint64_t, uint64_t>> naive_closure(uint64_t n, uint64_t m, uint64_t bound);

/// Least degree in the closure with weight 1 mod m and support exactly
/// Supp(m); none if the closure has no such state.
std::optional<uint64_t> naive_minimal_degree(uint64_t n, uint64_t m, uint64_t bound);

struct Report {
  bool ok = true;
  std::string text;
};

/// Brute-force cross-checks against the engineered paths: binomial
/// congruences and valuations, semigroup membership, and the degree
/// calculus at small n. Scales with max_n.
Report run_all(uint64_t max_n);

}  // namespace perind::oracle

#endif
