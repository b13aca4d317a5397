#ifndef PERIND_SEMIGROUP_HPP
#define PERIND_SEMIGROUP_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "arith.hpp"

namespace perind::semigroup {

using arith::Nat;

/// A nonnegative integer combination of the generators hitting `target`.
struct Representation {
  Nat target;
  std::vector<Nat> coefficients;  // aligned with the generator list passed in
};

/// Generators, their gcd, and (when computed) the Apery table of the
/// normalized instance: for each residue modulo the smallest normalized
/// generator, the least representable normalized value.
struct SemigroupInstance {
  std::vector<Nat> generators;
  Nat g;
  uint64_t modulus = 0;
  std::vector<Nat> apery;
};

enum class Backend { automatic, apery, dfs };

/// Residue-table cap; reads PERIND_MEM_BUDGET once (default 10^7).
uint64_t memory_budget();

/// Decides representability and extracts the canonical coefficient vector:
/// lexicographically greatest under generator-descending order. Target 0
/// yields all zeros. Backend::automatic uses residue tables where the
/// smallest normalized generator fits the budget and falls back to a pruned
/// depth-first search for astronomically large generators.
std::optional<Representation> membership(const std::vector<Nat>& gens, const Nat& target,
                                         Backend backend = Backend::automatic);

/// Apery table of the normalized instance. Throws budget_exceeded when the
/// smallest normalized generator is beyond the residue-table cap.
SemigroupInstance apery_set(const std::vector<Nat>& gens);

/// Constant-time membership through a computed Apery table.
bool representable(const SemigroupInstance& inst, const Nat& x);

/// max(apery) - smallest normalized generator: the largest normalized value
/// that is not representable.
Nat frobenius(const SemigroupInstance& inst);

/// Least N <= bound with Supp(N) = P exactly that the generators represent,
/// together with a witness combination. Candidates come from the exact
/// smooth stream; generators above a candidate are pruned from its query.
std::optional<std::pair<Nat, Representation>> min_support_constrained(
    const std::vector<Nat>& gens, const arith::PrimeSupport& p, const Nat& bound);

/// Dense reachability bitset for bounded sums of generators (the coin DP),
/// shared with the degree-calculus direct-sum closure.
class SumClosure {
 public:
  explicit SumClosure(uint64_t bound);
  uint64_t bound() const { return bound_; }
  bool contains(uint64_t x) const;  // x is a sum of >= 1 generators
  /// Adds d as a generator unless it is already a sum; every value that
  /// becomes reachable (including d itself) is appended to out. Returns
  /// false when d was redundant.
  bool add_generator(uint64_t d, std::vector<uint64_t>& out);

 private:
  uint64_t bound_;
  std::vector<uint64_t> bits_;  // bit 0 = empty sum
};

}  // namespace perind::semigroup

#endif
