#include "arith.hpp"

#include <algorithm>
#include <map>

namespace perind::arith {

namespace {

constexpr unsigned long kTrialLimit = 1000000;
constexpr unsigned long kWheelInc[8] = {4, 2, 4, 2, 4, 6, 2, 6};

Nat abs_diff(const Nat& a, const Nat& b) { return a >= b ? Nat(a - b) : Nat(b - a); }

// Brent cycle variant; deterministic sweep over polynomial offsets.
Nat pollard_brent(const Nat& n) {
  for (unsigned long c = 1;; ++c) {
    Nat x = 2, y = 2, q = 1, g = 1, ys = 0;
    unsigned long r = 1;
    const unsigned long block = 128;
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
      for (unsigned long k = 0; k < r && g == 1; k += block) {
        ys = y;
        const unsigned long lim = std::min(block, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          q = q * abs_diff(x, y) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      r <<= 1;
    }
    if (g == n) {
      g = 1;
      y = ys;
      while (g == 1) {
        y = (y * y + c) % n;
        Nat d = abs_diff(x, y);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (g != n) return g;
  }
}

void factor_rec(const Nat& n, std::map<Nat, unsigned long>& acc) {
  if (n == 1) return;
  if (is_prime(n)) {
    acc[n] += 1;
    return;
  }
  Nat d = pollard_brent(n);
  factor_rec(d, acc);
  factor_rec(n / d, acc);
}

}  // namespace

bool is_prime(const Nat& x) {
  if (x < 2) return false;
  return mpz_probab_prime_p(x.get_mpz_t(), 32) != 0;
}

Factorization factorize(const Nat& x) {
  if (x < 1) throw Error(Errc::invalid_argument, "factorize: argument must be positive");
  Factorization out;
  out.value = x;
  if (x == 1) return out;
  std::map<Nat, unsigned long> acc;
  Nat n = x;
  for (unsigned long sp : {2ul, 3ul, 5ul}) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), sp)) {
      Nat p = sp;
      acc[p] = mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    }
  }
  unsigned long p = 7;
  std::size_t wi = 0;
  while (n > 1 && p <= kTrialLimit) {
    if (Nat(p) * p > n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      Nat pp = p;
      acc[pp] = mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t());
    }
    p += kWheelInc[wi];
    wi = (wi + 1) & 7;
  }
  if (n > 1) factor_rec(n, acc);
  out.factors.assign(acc.begin(), acc.end());
  return out;
}

PrimeSupport support(const Nat& x) {
  PrimeSupport s;
  for (const auto& [p, e] : factorize(x).factors) s.push_back(p);
  return s;
}

Nat binomial(const Nat& n, const Nat& k) {
  if (n < 0 || k < 0) throw Error(Errc::invalid_argument, "binomial: arguments must be naturals");
  if (k > n) return 0;
  Nat kk = std::min(Nat(n - k), k);
  if (!kk.fits_ulong_p())
    throw Error(Errc::unsupported, "binomial: reduced k does not fit a machine word");
  Nat out;
  mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), kk.get_ui());
  return out;
}

unsigned long valuation(const Nat& p, const Nat& x) {
  if (x < 1) throw Error(Errc::invalid_argument, "valuation: argument must be positive");
  if (!is_prime(p)) throw Error(Errc::invalid_argument, "valuation: p must be prime");
  Nat reduced;
  return mpz_remove(reduced.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
}

Nat mod_inverse(const Nat& a, const Nat& m) {
  if (m < 1) throw Error(Errc::invalid_argument, "mod_inverse: modulus must be positive");
  if (a < 0) throw Error(Errc::invalid_argument, "mod_inverse: argument must be a natural");
  Nat r;
  if (m == 1) return 1;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw Error(Errc::not_coprime, "mod_inverse: arguments are not coprime");
  if (r == 0) r = m;
  return r;
}

unsigned long binomial_valuation(const Nat& p, const Nat& n, const Nat& k) {
  if (!is_prime(p)) throw Error(Errc::invalid_argument, "binomial_valuation: p must be prime");
  if (k > n || k < 0 || n < 0)
    throw Error(Errc::invalid_argument, "binomial_valuation: need 0 <= k <= n");
  auto digit_sum = [&p](Nat v) {
    Nat s = 0;
    while (v > 0) {
      s += v % p;
      v /= p;
    }
    return s;
  };
  Nat num = digit_sum(k) + digit_sum(n - k) - digit_sum(n);
  Nat e = num / (p - 1);
  return e.get_ui();
}

std::vector<uint64_t> primes_up_to(uint64_t n) {
  std::vector<uint64_t> out;
  if (n < 2) return out;
  std::vector<bool> comp(n + 1, false);
  for (uint64_t i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (uint64_t j = i * i; j <= n; j += i) comp[j] = true;
  }
  return out;
}

bool support_subset(const Nat& x, const PrimeSupport& p) {
  if (x < 1) throw Error(Errc::invalid_argument, "support_subset: argument must be positive");
  Nat n = x;
  for (const Nat& q : p) {
    Nat reduced;
    mpz_remove(reduced.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t());
    n = reduced;
  }
  return n == 1;
}

bool support_equals(const Nat& x, const PrimeSupport& p) {
  if (!support_subset(x, p)) return false;
  for (const Nat& q : p)
    if (!mpz_divisible_p(x.get_mpz_t(), q.get_mpz_t())) return false;
  return true;
}

SmoothStream::SmoothStream(PrimeSupport primes, Nat floor, bool exact)
    : primes_(std::move(primes)), floor_(std::move(floor)), exact_(exact) {
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (!is_prime(primes_[i]) || (i > 0 && primes_[i] <= primes_[i - 1]))
      throw Error(Errc::invalid_argument, "SmoothStream: primes must be strictly increasing");
  }
  heap_.push(Entry{1, 0});
}

std::optional<Nat> SmoothStream::next() {
  while (!done_ && !heap_.empty()) {
    Entry e = heap_.top();
    heap_.pop();
    for (std::size_t j = e.max_idx; j < primes_.size(); ++j)
      heap_.push(Entry{e.value * primes_[j], j});
    if (primes_.empty()) done_ = true;
    if (e.value < floor_) continue;
    if (exact_) {
      bool all = true;
      for (const Nat& q : primes_) {
        if (!mpz_divisible_p(e.value.get_mpz_t(), q.get_mpz_t())) {
          all = false;
          break;
        }
      }
      if (!all) continue;
    }
    return e.value;
  }
  return std::nullopt;
}

}  // namespace perind::arith
