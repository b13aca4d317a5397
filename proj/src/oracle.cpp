#include "oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "calculus.hpp"
#include "semigroup.hpp"

namespace perind::oracle {

using arith::Nat;

bool naive_representable(const std::vector<uint64_t>& gens, uint64_t target) {
  std::vector<char> can(target + 1, 0);
  can[0] = 1;
  for (uint64_t x = 1; x <= target; ++x)
    for (uint64_t g : gens)
      if (g <= x && can[x - g]) {
        can[x] = 1;
        break;
      }
  return can[target];
}

unsigned kummer_carries(uint64_t p, uint64_t n, uint64_t k) {
  uint64_t a = k, b = n - k;
  unsigned carries = 0, carry = 0;
  while (a || b || carry) {
    const uint64_t s = a % p + b % p + carry;
    carry = s >= p ? 1 : 0;
    carries += carry;
    a /= p;
    b /= p;
  }
  return carries;
}

namespace {

struct Closure {
  uint64_t bound, m;
  std::vector<std::vector<char>> in;          // in[w][d]
  std::vector<std::vector<uint64_t>> members;  // per class, insertion order
  std::deque<std::pair<uint64_t, uint64_t>> work;
  std::vector<uint64_t> smooth;  // Supp(m)-smooth >= 2

  Closure(uint64_t bound_, uint64_t m_) : bound(bound_), m(m_) {
    in.assign(m, std::vector<char>(bound + 1, 0));
    members.assign(m, {});
  }

  void add(uint64_t d, uint64_t w) {
    if (d < 1 || d > bound || in[w][d]) return;
    in[w][d] = 1;
    members[w].push_back(d);
    work.emplace_back(d, w);
  }

  void run() {
    while (!work.empty()) {
      auto [d, w] = work.front();
      work.pop_front();
      // exterior powers, both tails plus the full power
      for (uint64_t q = 1; q <= d / 2; ++q) {
        Nat c = arith::binomial(Nat(static_cast<unsigned long>(d)), Nat(static_cast<unsigned long>(q)));
        if (c > Nat(static_cast<unsigned long>(bound))) break;
        const uint64_t deg = c.get_ui();
        add(deg, q % m * (w % m) % m);
        add(deg, (d - q) % m * (w % m) % m);
      }
      if (d >= 1) add(1, d % m * (w % m) % m);
      // tensor powers, uncapped
      unsigned __int128 pw = d;
      if (d >= 2)
        for (uint64_t r = 2;; ++r) {
          pw *= d;
          if (pw > bound) break;
          add(uint64_t(pw), r % m * (w % m) % m);
        }
      // stabilization over every smooth rank
      for (uint64_t k : smooth) {
        unsigned __int128 t = (unsigned __int128)k * d;
        if (t > bound) break;
        add(uint64_t(t), w);
      }
      // direct sums within the class
      for (uint64_t e : members[w])
        if (e + d <= bound) add(e + d, w);
      // tensor with everything so far
      for (uint64_t w2 = 0; w2 < m; ++w2)
        for (uint64_t e : members[w2]) {
          unsigned __int128 t = (unsigned __int128)e * d;
          if (t <= bound) add(uint64_t(t), (w + w2) % m);
        }
    }
  }
};

}  // namespace

std::set<std::pair<uint64_t, uint64_t>> naive_closure(uint64_t n, uint64_t m, uint64_t bound) {
  if (m < 1 || n < 1 || n % m != 0)
    throw Error(Errc::invalid_argument, "naive_closure: need m | n");
  Closure c(bound, m);
  arith::SmoothStream st(arith::support(Nat(static_cast<unsigned long>(m))), 2, /*exact=*/false);
  while (auto k = st.next()) {
    if (*k > bound) break;
    c.smooth.push_back(k->get_ui());
  }
  c.add(n, 1 % m);
  c.run();
  std::set<std::pair<uint64_t, uint64_t>> out;
  for (uint64_t w = 0; w < m; ++w)
    for (uint64_t d : c.members[w]) out.emplace(d, w);
  return out;
}

std::optional<uint64_t> naive_minimal_degree(uint64_t n, uint64_t m, uint64_t bound) {
  const auto states = naive_closure(n, m, bound);
  std::vector<uint64_t> supp;
  for (const Nat& p : arith::support(Nat(static_cast<unsigned long>(m)))) supp.push_back(p.get_ui());
  const uint64_t goal_w = 1 % m;
  std::optional<uint64_t> best;
  for (const auto& [d, w] : states) {
    if (w != goal_w) continue;
    uint64_t r = d;
    bool exact = true;
    for (uint64_t p : supp) {
      if (d % p != 0) exact = false;
      while (r % p == 0) r /= p;
    }
    if (exact && r == 1 && (!best || d < *best)) best = d;
  }
  return best;
}

Report run_all(uint64_t max_n) {
  Report rep;
  std::ostringstream os;
  uint64_t checks = 0, failures = 0;
  auto section = [&](const std::string& name, uint64_t done, uint64_t bad) {
    os << name << ": " << (bad ? "FAIL" : "ok") << " (" << done << " checks";
    if (bad) os << ", " << bad << " mismatches";
    os << ")\n";
    checks += done;
    failures += bad;
  };

  // binomial congruences (Lucas-style) and carry-count valuations
  {
    uint64_t done = 0, bad = 0;
    const uint64_t lim = std::max<uint64_t>(60, std::min<uint64_t>(200, 4 * max_n));
    for (uint64_t p : {2, 3, 5, 7}) {
      for (uint64_t a = 1; a <= lim; ++a) {
        for (uint64_t ps = 1; a % ps == 0; ps *= p) {
          const uint64_t c = a / ps;
          for (uint64_t b = 0; b <= a; ++b) {
            const Nat bin = arith::binomial(Nat((unsigned long)a), Nat((unsigned long)b));
            const uint64_t lhs = mpz_fdiv_ui(bin.get_mpz_t(), p);
            uint64_t rhs = 0;
            if (b % ps == 0) {
              const Nat sub = arith::binomial(Nat((unsigned long)c), Nat((unsigned long)(b / ps)));
              rhs = mpz_fdiv_ui(sub.get_mpz_t(), p);
            }
            ++done;
            if (lhs != rhs) ++bad;
          }
          if (ps > lim) break;
        }
        for (uint64_t b = 0; b <= a; ++b) {
          const Nat bin = arith::binomial(Nat((unsigned long)a), Nat((unsigned long)b));
          const unsigned long v = arith::valuation(Nat((unsigned long)p), bin);
          ++done;
          if (v != kummer_carries(p, a, b)) ++bad;
        }
      }
    }
    section("binomial congruences", done, bad);
  }

  // semigroup membership vs direct DP
  {
    uint64_t done = 0, bad = 0;
    uint64_t rng = 0x243f6a8885a308d3ull;  // fixed-seed xorshift
    auto next = [&rng] {
      rng ^= rng << 13;
      rng ^= rng >> 7;
      rng ^= rng << 17;
      return rng;
    };
    std::vector<std::vector<uint64_t>> corpus;
    for (uint64_t a = 1; a <= 50; ++a)
      for (uint64_t b = a; b <= 50; b += 3) corpus.push_back({a, b});
    for (int i = 0; i < 60; ++i)
      corpus.push_back({next() % 50 + 1, next() % 50 + 1, next() % 50 + 1});
    for (int i = 0; i < 60; ++i)
      corpus.push_back({next() % 50 + 1, next() % 50 + 1, next() % 50 + 1, next() % 50 + 1});
    for (const auto& gens : corpus) {
      std::vector<Nat> g;
      for (uint64_t v : gens) g.emplace_back((unsigned long)v);
      for (uint64_t t = 0; t <= 2000; t += 7) {
        const bool naive = naive_representable(gens, t);
        auto got = semigroup::membership(g, Nat((unsigned long)t));
        ++done;
        if (naive != got.has_value()) {
          ++bad;
          continue;
        }
        if (got) {
          Nat sum = 0;
          for (std::size_t k = 0; k < g.size(); ++k) sum += got->coefficients[k] * g[k];
          if (sum != Nat((unsigned long)t)) ++bad;
        }
      }
    }
    section("semigroup membership", done, bad);
  }

  // degree calculus vs worklist closure
  {
    uint64_t done = 0, bad = 0;
    const uint64_t cap = std::max<uint64_t>(4, std::min<uint64_t>(max_n, 16));
    for (uint64_t n = 2; n <= cap; ++n)
      for (uint64_t m = 2; m <= n; ++m) {
        if (n % m != 0) continue;
        const uint64_t bound = 200;
        auto naive = naive_minimal_degree(n, m, bound);
        auto fast = calculus::minimize_degree(Nat((unsigned long)n), Nat((unsigned long)m),
                                              Nat((unsigned long)bound));
        ++done;
        const bool same = naive.has_value() == fast.has_value() &&
                          (!naive || Nat((unsigned long)*naive) == fast->minimal.degree);
        if (!same) ++bad;
      }
    section("degree calculus", done, bad);
  }

  os << (failures ? "FAIL" : "ok") << ": " << checks << " cross-checks, " << failures
     << " mismatches\n";
  rep.ok = failures == 0;
  rep.text = os.str();
  return rep;
}

}  // namespace perind::oracle
