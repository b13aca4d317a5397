#include "lemma.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace perind::lemma {

namespace {

constexpr uint64_t kMaxEnumeratedN = 2000000;

void require_divides(const Nat& n, const Nat& m) {
  if (n < 1 || m < 1)
    throw Error(Errc::invalid_argument, "witness: n and m must be positive");
  if (!mpz_divisible_p(n.get_mpz_t(), m.get_mpz_t()))
    throw Error(Errc::non_divisor, "witness: m does not divide n");
}

void require_constructible(const Nat& n, const Nat& m) {
  require_divides(n, m);
  if (m == 1)
    throw Error(Errc::lemma_precondition,
                "witness: m = 1 is outside the construction (for a prime power "
                "n every C(n, q) with 0 < q < n shares a prime with n, so no "
                "witness set exists)");
}

std::string join(const std::vector<Nat>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i].get_str();
  return os.str();
}

// gcd of C(n, q) over qs, by per-prime minimum valuations. Every prime
// factor of a binomial C(n, .) is <= n, and when 1 is in the set the gcd
// divides C(n, 1) = n, shrinking the candidate primes to Supp(n).
std::pair<Nat, arith::PrimeSupport> binomial_gcd(const Nat& n, const std::vector<Nat>& qs) {
  arith::PrimeSupport candidates;
  const bool has_one = std::find(qs.begin(), qs.end(), Nat(1)) != qs.end();
  if (has_one) {
    candidates = arith::support(n);
  } else {
    if (!n.fits_ulong_p() || n.get_ui() > kMaxEnumeratedN)
      throw Error(Errc::unsupported, "witness: n too large to scan primes up to n");
    for (uint64_t p : arith::primes_up_to(n.get_ui())) candidates.emplace_back(p);
  }
  Nat g = 1;
  arith::PrimeSupport supp;
  for (const Nat& p : candidates) {
    unsigned long e = ULONG_MAX;
    for (const Nat& q : qs) {
      e = std::min(e, arith::binomial_valuation(p, n, q));
      if (e == 0) break;
    }
    if (e > 0) {
      Nat pe;
      mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
      g *= pe;
      supp.push_back(p);
    }
  }
  return {g, supp};
}

QSetWitness finish(const Nat& n, const Nat& m, std::vector<Nat> qs) {
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  auto [g, supp] = binomial_gcd(n, qs);
  if (supp != arith::support(m))
    throw Error(Errc::internal, "witness: construction produced a wrong support");
  return QSetWitness{n, m, std::move(qs), std::move(g), std::move(supp)};
}

}  // namespace

QSetWitness minimal_witness(const Nat& n, const Nat& m) {
  require_constructible(n, m);
  std::vector<Nat> qs{1};
  for (const auto& [p, e] : arith::factorize(n).factors) {
    if (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) continue;
    Nat pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    qs.push_back(pe);
  }
  return finish(n, m, std::move(qs));
}

QSetWitness maximal_witness(const Nat& n, const Nat& m) {
  require_constructible(n, m);
  if (!n.fits_ulong_p() || n.get_ui() > kMaxEnumeratedN)
    throw Error(Errc::unsupported, "maximal_witness: n too large to enumerate");
  std::vector<Nat> qs;
  for (Nat q = 1; q < n; ++q) {
    Nat g;
    mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), m.get_mpz_t());
    if (g == 1) qs.push_back(q);
  }
  return finish(n, m, std::move(qs));
}

CheckResult check_witness(const Nat& n, const Nat& m, std::vector<Nat> qs) {
  require_divides(n, m);
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  CheckResult res;
  if (qs.empty()) {
    res.failure = "empty witness set";
    return res;
  }
  for (const Nat& q : qs) {
    if (q < 1 || q >= n) {
      res.failure = "q out of range [1, n-1]: q = " + q.get_str();
      return res;
    }
  }
  for (const Nat& q : qs) {
    Nat g;
    mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), m.get_mpz_t());
    if (g != 1) {
      res.failure = "gcd(q, m) != 1 for q = " + q.get_str();
      return res;
    }
  }
  auto [g, supp] = binomial_gcd(n, qs);
  arith::PrimeSupport want = arith::support(m);
  if (supp != want) {
    res.failure = "support mismatch: Supp gcd = {" + join(supp) + "} but Supp m = {" + join(want) + "}";
    return res;
  }
  res.ok = true;
  res.witness = QSetWitness{n, m, std::move(qs), std::move(g), std::move(supp)};
  return res;
}

}  // namespace perind::lemma
