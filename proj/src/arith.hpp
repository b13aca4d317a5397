#ifndef PERIND_ARITH_HPP
#define PERIND_ARITH_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "error.hpp"

namespace perind::arith {

using Nat = mpz_class;

/// Prime-power decomposition of a positive integer. The factor list is
/// ordered by prime and multiplies back to `value`.
struct Factorization {
  Nat value;
  std::vector<std::pair<Nat, unsigned long>> factors;
};

/// Strictly increasing list of primes; the support of 1 is empty.
using PrimeSupport = std::vector<Nat>;

bool is_prime(const Nat& x);

/// Trial division (2/3/5 wheel) up to 10^6 with a Pollard-Brent fallback.
/// Rejects x = 0.
Factorization factorize(const Nat& x);

/// Set of primes dividing x. Rejects x = 0.
PrimeSupport support(const Nat& x);

/// Exact binomial coefficient; k > n yields 0.
Nat binomial(const Nat& n, const Nat& k);

/// Largest e with p^e | x. Rejects x = 0 and non-prime p.
unsigned long valuation(const Nat& p, const Nat& x);

/// Least r in [1, m] with a*r == 1 (mod m); m = 1 gives 1.
/// Rejects gcd(a, m) != 1.
Nat mod_inverse(const Nat& a, const Nat& m);

/// v_p(C(n, k)) by Legendre digit sums, without computing the binomial.
unsigned long binomial_valuation(const Nat& p, const Nat& n, const Nat& k);

std::vector<uint64_t> primes_up_to(uint64_t n);

bool support_subset(const Nat& x, const PrimeSupport& p);  // Supp(x) within P
bool support_equals(const Nat& x, const PrimeSupport& p);  // Supp(x) == P

/// Ascending stream of P-smooth naturals >= floor, each exactly once.
/// With exact=true only values divisible by every prime of P are yielded.
/// Empty P yields the single value 1.
class SmoothStream {
 public:
  SmoothStream(PrimeSupport primes, Nat floor, bool exact);
  std::optional<Nat> next();

 private:
  struct Entry {
    Nat value;
    std::size_t max_idx;
  };
  struct ValueGreater {
    bool operator()(const Entry& a, const Entry& b) const { return a.value > b.value; }
  };
  std::vector<Nat> primes_;
  Nat floor_;
  bool exact_;
  bool done_ = false;
  std::priority_queue<Entry, std::vector<Entry>, ValueGreater> heap_;
};

}  // namespace perind::arith

#endif
