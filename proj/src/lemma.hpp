#ifndef PERIND_LEMMA_HPP
#define PERIND_LEMMA_HPP

#include <optional>
#include <string>
#include <vector>

#include "arith.hpp"

namespace perind::lemma {

using arith::Nat;

/// A witness set {q_1, ..., q_l} with 1 <= q_i < n and gcd(q_i, m) = 1 whose
/// binomial gcd has prime support equal to Supp(m).
struct QSetWitness {
  Nat n;
  Nat m;
  std::vector<Nat> qs;  // strictly increasing
  Nat gcd_value;        // gcd of C(n, q) over qs
  arith::PrimeSupport gcd_support;
};

/// The construction {1} u {p^v_p(n) : p | n, p does not divide m}.
/// Requires m | n and m > 1; m = 1 is rejected (no q in [1, n-1] works when
/// n is a nontrivial prime power, and the witness type cannot express n = 1).
QSetWitness minimal_witness(const Nat& n, const Nat& m);

/// Every q in [1, n-1] coprime to m. Same preconditions as minimal_witness.
QSetWitness maximal_witness(const Nat& n, const Nat& m);

struct CheckResult {
  bool ok = false;
  std::optional<QSetWitness> witness;  // present iff ok
  std::string failure;                 // first violated constraint
};

/// Recomputes the gcd and its support for a user-supplied q-set; the input
/// is deduplicated and sorted. Requires m | n.
CheckResult check_witness(const Nat& n, const Nat& m, std::vector<Nat> qs);

}  // namespace perind::lemma

#endif
