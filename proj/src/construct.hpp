#ifndef PERIND_CONSTRUCT_HPP
#define PERIND_CONSTRUCT_HPP

#include <optional>
#include <string>
#include <vector>

#include "arith.hpp"

namespace perind::construct {

using arith::Nat;

/// Degree certificate: a q-set with inverses r_i, the column dimensions
/// s_i = C(n, q_i)^{r_i}, and nonnegative coefficients writing N as their
/// combination, with Supp(N) = Supp(m). The trivial split class (m = 1) is
/// encoded with empty columns and N = 1.
struct Certificate {
  Nat n;
  Nat m;
  std::vector<Nat> q_set;
  std::vector<Nat> r;
  std::vector<Nat> s;
  std::vector<Nat> coefficients;
  Nat big_n;
  arith::PrimeSupport support_m;
  arith::PrimeSupport support_n;  // support of big_n
};

enum class QMode { minimal, maximal, custom };

/// Builds a certificate with the least N <= bound for the chosen q-set.
/// Special cases: m = 1 gives the trivial certificate; Supp(n) = Supp(m)
/// short-circuits to N = n. Without an explicit bound the paper-style
/// existence threshold is used, so synthesis cannot run out of room.
std::optional<Certificate> synthesize(const Nat& n, const Nat& m, QMode mode,
                                      const std::vector<Nat>& custom_q,
                                      const std::optional<Nat>& bound);

struct VerifyClause {
  std::string name;
  bool ok;
  std::string detail;
};

struct VerifyReport {
  bool ok = false;
  std::vector<VerifyClause> clauses;
};

/// Recomputes every certificate invariant from scratch: binomials, powers,
/// the linear combination, and both supports. Accepts any valid coefficient
/// witness for the same N.
VerifyReport verify(const Certificate& cert);

/// An N guaranteed representable by the existence argument: the first value
/// with exact support Supp(m) past the Frobenius threshold of the
/// normalized columns. No minimality claim; requires m > 1.
Nat paper_bound(const Nat& n, const Nat& m, QMode mode, const std::vector<Nat>& custom_q);

/// The bound synthesize uses when none is given.
Nat default_bound(const Nat& n, const Nat& m, QMode mode, const std::vector<Nat>& custom_q);

/// Canonical JSON document: fixed key order (version, n, m, q_set, r, s,
/// coefficients, N, support_m, support_N), integers as decimal strings, no
/// insignificant whitespace. Byte-identical across runs.
std::string to_json(const Certificate& cert);
Certificate from_json(const std::string& text);

}  // namespace perind::construct

#endif
