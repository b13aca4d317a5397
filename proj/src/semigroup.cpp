#include "semigroup.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>

namespace perind::semigroup {

namespace {

constexpr uint64_t kInf = std::numeric_limits<uint64_t>::max();
constexpr uint64_t kMpzAperyLimit = 65536;  // table size cap for mpz-valued tables

void validate_generators(const std::vector<Nat>& gens) {
  if (gens.empty()) throw Error(Errc::invalid_argument, "semigroup: no generators");
  for (const Nat& v : gens)
    if (v < 1) throw Error(Errc::invalid_argument, "semigroup: generators must be positive");
}

Nat gcd_all(const std::vector<Nat>& xs) {
  Nat g = 0;
  for (const Nat& x : xs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

// One round-robin relaxation: folds multiples of one generator into an
// Apery table that is already a fixpoint for the previous generators.
void relax_u64(std::vector<uint64_t>& ap, uint64_t a, uint64_t value) {
  if (a == 1) {
    ap[0] = 0;
    return;
  }
  const uint64_t s = value % a;
  if (s == 0) return;
  const uint64_t d = std::gcd(s, a);
  const uint64_t cycle = a / d;
  for (uint64_t r0 = 0; r0 < d; ++r0) {
    uint64_t r = r0;
    for (uint64_t step = 0; step < 2 * cycle; ++step) {
      uint64_t nr = r + s;
      if (nr >= a) nr -= a;
      if (ap[r] != kInf) {
        const uint64_t cand = ap[r] + value;
        if (cand < ap[nr]) ap[nr] = cand;
      }
      r = nr;
    }
  }
}

void relax_mpz(std::vector<Nat>& ap, std::vector<bool>& seen, uint64_t a, const Nat& value) {
  if (a == 1) {
    ap[0] = 0;
    seen[0] = true;
    return;
  }
  const uint64_t s = mpz_fdiv_ui(value.get_mpz_t(), a);
  if (s == 0) return;
  const uint64_t d = std::gcd(s, a);
  const uint64_t cycle = a / d;
  for (uint64_t r0 = 0; r0 < d; ++r0) {
    uint64_t r = r0;
    for (uint64_t step = 0; step < 2 * cycle; ++step) {
      uint64_t nr = r + s;
      if (nr >= a) nr -= a;
      if (seen[r]) {
        Nat cand = ap[r] + value;
        if (!seen[nr] || cand < ap[nr]) {
          ap[nr] = cand;
          seen[nr] = true;
        }
      }
      r = nr;
    }
  }
}

struct Column {
  Nat value;          // normalized, descending, distinct
  std::size_t orig;   // first original index with this value
};

// Canonical coefficient extraction: lexicographically greatest vector under
// generator-descending order. Residue tables cover the longest uint64-safe
// suffix; the huge-generator prefix is handled by the bounded descent.
class Solver {
 public:
  Solver(std::vector<Column> cols, Backend backend) : cols_(std::move(cols)) {
    const std::size_t k = cols_.size();
    suffix_gcd_.resize(k);
    Nat g = 0;
    for (std::size_t i = k; i-- > 0;) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), cols_[i].value.get_mpz_t());
      suffix_gcd_[i] = g;
    }
    coeff_.assign(k, Nat(0));
    if (backend == Backend::dfs) return;
    const Nat& smallest = cols_.back().value;
    if (!smallest.fits_ulong_p() || smallest.get_ui() > memory_budget()) {
      if (backend == Backend::apery)
        throw Error(Errc::budget_exceeded,
                    "membership: smallest normalized generator exceeds the residue "
                    "budget; use the depth-first backend");
      return;
    }
    a_ = smallest.get_ui();
    const uint64_t safe = (uint64_t(1) << 62) / std::max<uint64_t>(a_, 1);
    first_ = k;
    for (std::size_t i = k; i-- > 0;) {
      if (!cols_[i].value.fits_ulong_p() || cols_[i].value.get_ui() > safe) break;
      first_ = i;
    }
    if (backend == Backend::apery && first_ != 0)
      throw Error(Errc::budget_exceeded,
                  "membership: generators too large for a full residue table");
    std::vector<uint64_t> table(a_, kInf);
    table[0] = 0;
    tables_.resize(k - first_);
    for (std::size_t i = k; i-- > first_;) {
      relax_u64(table, a_, cols_[i].value.get_ui());
      tables_[i - first_] = table;
    }
  }

  bool run(const Nat& target) { return solve(0, target); }
  const std::vector<Nat>& coefficients() const { return coeff_; }

 private:
  bool table_says_yes(std::size_t i, const Nat& t) const {
    const auto& ap = tables_[i - first_];
    const uint64_t rho = mpz_fdiv_ui(t.get_mpz_t(), a_);
    if (ap[rho] == kInf) return false;
    return t >= ap[rho];
  }

  // Largest x with A*x + B*y = t, x, y >= 0.
  bool solve_two(std::size_t i, const Nat& t) {
    const Nat& va = cols_[i].value;
    const Nat& vb = cols_[i + 1].value;
    Nat h;
    mpz_gcd(h.get_mpz_t(), va.get_mpz_t(), vb.get_mpz_t());
    if (!mpz_divisible_p(t.get_mpz_t(), h.get_mpz_t())) return false;
    const Nat a1 = va / h, b1 = vb / h, t1 = t / h;
    const Nat xmax = t1 / a1;
    if (b1 == 1) {
      coeff_[i] = xmax;
      coeff_[i + 1] = t1 - xmax * a1;
      return true;
    }
    Nat x0 = (t1 % b1) * arith::mod_inverse(a1 % b1, b1) % b1;
    if (x0 > xmax) return false;
    Nat x = xmax - (xmax - x0) % b1;
    coeff_[i] = x;
    coeff_[i + 1] = (t1 - a1 * x) / b1;
    return true;
  }

  bool solve(std::size_t i, const Nat& t) {
    const std::size_t k = cols_.size();
    if (t == 0) {
      for (std::size_t j = i; j < k; ++j) coeff_[j] = 0;
      return true;
    }
    if (i == k) return false;
    if (!mpz_divisible_p(t.get_mpz_t(), suffix_gcd_[i].get_mpz_t())) return false;
    if (i + 1 == k) {
      if (!mpz_divisible_p(t.get_mpz_t(), cols_[i].value.get_mpz_t())) return false;
      coeff_[i] = t / cols_[i].value;
      return true;
    }
    if (i + 2 == k) return solve_two(i, t);
    if (i >= first_ && !table_says_yes(i, t)) return false;
    const bool next_covered = (i + 1 >= first_);
    for (Nat c = t / cols_[i].value; c >= 0; --c) {
      Nat rem = t - c * cols_[i].value;
      if (next_covered && !table_says_yes(i + 1, rem)) continue;
      if (solve(i + 1, rem)) {
        coeff_[i] = c;
        return true;
      }
    }
    return false;
  }

  std::vector<Column> cols_;
  std::vector<Nat> suffix_gcd_;
  std::vector<Nat> coeff_;
  std::vector<std::vector<uint64_t>> tables_;
  std::size_t first_ = std::numeric_limits<std::size_t>::max();
  uint64_t a_ = 0;
};

}  // namespace

uint64_t memory_budget() {
  static const uint64_t cached = [] {
    const char* s = std::getenv("PERIND_MEM_BUDGET");
    if (!s || !*s) return uint64_t(10000000);
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s || *end || v == 0) return uint64_t(10000000);
    return uint64_t(v);
  }();
  return cached;
}

std::optional<Representation> membership(const std::vector<Nat>& gens, const Nat& target,
                                         Backend backend) {
  validate_generators(gens);
  if (target < 0) throw Error(Errc::invalid_argument, "membership: target must be a natural");
  Representation rep{target, std::vector<Nat>(gens.size(), Nat(0))};
  if (target == 0) return rep;

  const Nat g = gcd_all(gens);
  if (!mpz_divisible_p(target.get_mpz_t(), g.get_mpz_t())) return std::nullopt;

  std::map<Nat, std::size_t> first_index;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Nat v = gens[i] / g;
    if (!first_index.count(v)) first_index[v] = i;
  }
  std::vector<Column> cols;
  for (auto it = first_index.rbegin(); it != first_index.rend(); ++it)
    cols.push_back(Column{it->first, it->second});

  Solver solver(std::move(cols), backend);
  if (!solver.run(target / g)) return std::nullopt;

  std::size_t ci = 0;
  for (auto it = first_index.rbegin(); it != first_index.rend(); ++it, ++ci)
    rep.coefficients[it->second] = solver.coefficients()[ci];
  return rep;
}

SemigroupInstance apery_set(const std::vector<Nat>& gens) {
  validate_generators(gens);
  SemigroupInstance inst;
  inst.generators = gens;
  inst.g = gcd_all(gens);

  std::vector<Nat> norm;
  for (const Nat& v : gens) norm.push_back(v / inst.g);
  std::sort(norm.begin(), norm.end());
  norm.erase(std::unique(norm.begin(), norm.end()), norm.end());

  const Nat& smallest = norm.front();
  if (!smallest.fits_ulong_p() || smallest.get_ui() > memory_budget())
    throw Error(Errc::budget_exceeded,
                "apery_set: smallest normalized generator exceeds the residue budget; "
                "use the depth-first membership path");
  const uint64_t a = smallest.get_ui();
  inst.modulus = a;

  const uint64_t safe = (uint64_t(1) << 62) / std::max<uint64_t>(a, 1);
  bool u64_ok = true;
  for (const Nat& v : norm)
    if (!v.fits_ulong_p() || v.get_ui() > safe) u64_ok = false;

  if (u64_ok) {
    std::vector<uint64_t> table(a, kInf);
    table[0] = 0;
    for (const Nat& v : norm) relax_u64(table, a, v.get_ui());
    inst.apery.reserve(a);
    for (uint64_t r = 0; r < a; ++r) {
      if (table[r] == kInf)
        throw Error(Errc::internal, "apery_set: unreachable residue in normalized instance");
      inst.apery.emplace_back(static_cast<unsigned long>(table[r]));
    }
    return inst;
  }

  if (a > kMpzAperyLimit)
    throw Error(Errc::budget_exceeded,
                "apery_set: generator values too large for a table of this modulus");
  std::vector<Nat> table(a, Nat(0));
  std::vector<bool> seen(a, false);
  seen[0] = true;
  for (const Nat& v : norm) relax_mpz(table, seen, a, v);
  for (uint64_t r = 0; r < a; ++r)
    if (!seen[r]) throw Error(Errc::internal, "apery_set: unreachable residue in normalized instance");
  inst.apery = std::move(table);
  return inst;
}

bool representable(const SemigroupInstance& inst, const Nat& x) {
  if (x < 0) throw Error(Errc::invalid_argument, "representable: x must be a natural");
  if (inst.apery.empty()) throw Error(Errc::invalid_argument, "representable: no Apery table");
  if (!mpz_divisible_p(x.get_mpz_t(), inst.g.get_mpz_t())) return false;
  Nat xn = x / inst.g;
  const uint64_t rho = mpz_fdiv_ui(xn.get_mpz_t(), inst.modulus);
  return xn >= inst.apery[rho];
}

Nat frobenius(const SemigroupInstance& inst) {
  if (inst.apery.empty()) throw Error(Errc::invalid_argument, "frobenius: no Apery table");
  Nat mx = 0;
  for (const Nat& v : inst.apery) mx = std::max(mx, v);
  return mx - Nat(static_cast<unsigned long>(inst.modulus));
}

std::optional<std::pair<Nat, Representation>> min_support_constrained(
    const std::vector<Nat>& gens, const arith::PrimeSupport& p, const Nat& bound) {
  validate_generators(gens);
  if (bound < 1) throw Error(Errc::invalid_argument, "min_support_constrained: bound must be >= 1");
  const Nat g = gcd_all(gens);
  arith::SmoothStream stream(p, 1, /*exact=*/true);
  while (auto cand = stream.next()) {
    if (*cand > bound) break;
    if (!mpz_divisible_p(cand->get_mpz_t(), g.get_mpz_t())) continue;
    std::vector<Nat> pruned;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (gens[i] <= *cand) {
        pruned.push_back(gens[i]);
        kept.push_back(i);
      }
    }
    if (pruned.empty()) continue;
    auto rep = membership(pruned, *cand);
    if (!rep) continue;
    Representation full{*cand, std::vector<Nat>(gens.size(), Nat(0))};
    for (std::size_t j = 0; j < kept.size(); ++j) full.coefficients[kept[j]] = rep->coefficients[j];
    return std::make_pair(*cand, std::move(full));
  }
  return std::nullopt;
}

SumClosure::SumClosure(uint64_t bound) : bound_(bound), bits_((bound >> 6) + 2, 0) {
  bits_[0] = 1;  // empty sum
}

bool SumClosure::contains(uint64_t x) const {
  if (x == 0 || x > bound_) return false;
  return (bits_[x >> 6] >> (x & 63)) & 1;
}

bool SumClosure::add_generator(uint64_t d, std::vector<uint64_t>& out) {
  if (d == 0 || d > bound_) return false;
  if (contains(d)) return false;
  for (uint64_t x = d; x <= bound_; ++x) {
    if (((bits_[(x - d) >> 6] >> ((x - d) & 63)) & 1) == 0) continue;
    uint64_t& word = bits_[x >> 6];
    const uint64_t mask = uint64_t(1) << (x & 63);
    if (word & mask) continue;
    word |= mask;
    out.push_back(x);
  }
  return true;
}

}  // namespace perind::semigroup
