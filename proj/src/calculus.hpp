#ifndef PERIND_CALCULUS_HPP
#define PERIND_CALCULUS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "arith.hpp"

namespace perind::calculus {

using arith::Nat;

/// A representative shadow: the degree of the representative and the
/// multiple of the generator class it represents, reduced modulo the period.
struct Rep {
  Nat degree;
  Nat weight;   // in [0, modulus)
  Nat modulus;  // m >= 1
};

struct Move {
  enum class Kind { lambda, tensor_power, tensor, direct_sum, stabilize };
  Kind kind;
  Nat arg;                   // q, r, or k for the unary kinds
  std::optional<Rep> other;  // partner for tensor / direct_sum
};

std::string to_string(const Move& move);

/// Exterior power: degree C(d, q), weight q*w. Requires 1 <= q <= degree.
Rep lambda_power(const Rep& rep, const Nat& q);
/// Tensor power: degree d^r, weight r*w. Requires r >= 1.
Rep tensor_power(const Rep& rep, const Nat& r);
/// Kronecker product: degrees multiply, weights add. Moduli must agree.
Rep tensor(const Rep& a, const Rep& b);
/// Degrees add; requires equal weights (the lifting obstruction vanishes
/// exactly when both sides represent the same class).
Rep direct_sum(const Rep& a, const Rep& b);
/// Tensoring with an endomorphism algebra of a free module of rank k:
/// degree k*d, class unchanged. Requires k >= 1.
Rep stabilize(const Rep& rep, const Nat& k);

Rep apply(const Rep& rep, const Move& move);
Rep replay(const Rep& seed, const std::vector<Move>& trace);

struct SearchOptions {
  /// Settle cap for the lazy regime (bounds too large for dense bitsets);
  /// exceeding it raises budget_exceeded rather than claiming "none".
  uint64_t max_states = 2000000;
  /// Tensor-power exponents capped at the modulus. Lossless in the presence
  /// of tensor products (d^r = d^(r mod m) * (d^m)^(r/m)); kept toggleable.
  bool cap_tensor_power = true;
  /// Force the lazy regime (testing hook).
  bool force_lazy = false;
  /// Invoked on every settled (degree, weight) pair.
  std::function<void(uint64_t, uint64_t)> on_settle;
};

struct SearchResult {
  Rep minimal;
  std::vector<Move> trace;  // replays from the seed to minimal
  uint64_t explored = 0;    // settled states
  Nat bound;
};

/// Least-degree representative of the generator class (weight 1) whose
/// degree has prime support exactly Supp(m), reachable from the seed
/// (n, 1 mod m) through moves whose intermediate degrees stay <= bound.
/// Stabilization is restricted to Supp(m)-smooth ranks (composites are
/// chains of prime steps). Deterministic; none when nothing qualifies.
std::optional<SearchResult> minimize_degree(const Nat& n, const Nat& m, const Nat& bound,
                                            const SearchOptions& options = {});

}  // namespace perind::calculus

#endif
