#include "calculus.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "semigroup.hpp"

namespace perind::calculus {

namespace {

void check_rep(const Rep& r) {
  if (r.modulus < 1 || r.degree < 1 || r.weight < 0 || r.weight >= r.modulus)
    throw Error(Errc::invalid_argument, "Rep: need degree >= 1 and 0 <= weight < modulus");
}

}  // namespace

Rep lambda_power(const Rep& rep, const Nat& q) {
  check_rep(rep);
  if (q < 1 || q > rep.degree)
    throw Error(Errc::zero_module, "lambda_power: q must lie in [1, degree]");
  return Rep{arith::binomial(rep.degree, q), Nat(q * rep.weight % rep.modulus), rep.modulus};
}

Rep tensor_power(const Rep& rep, const Nat& r) {
  check_rep(rep);
  if (r < 1) throw Error(Errc::invalid_argument, "tensor_power: r must be >= 1");
  if (!r.fits_ulong_p()) throw Error(Errc::unsupported, "tensor_power: exponent too large");
  Nat d;
  mpz_pow_ui(d.get_mpz_t(), rep.degree.get_mpz_t(), r.get_ui());
  return Rep{d, Nat(r * rep.weight % rep.modulus), rep.modulus};
}

Rep tensor(const Rep& a, const Rep& b) {
  check_rep(a);
  check_rep(b);
  if (a.modulus != b.modulus) throw Error(Errc::modulus_mismatch, "tensor: moduli differ");
  return Rep{a.degree * b.degree, Nat((a.weight + b.weight) % a.modulus), a.modulus};
}

Rep direct_sum(const Rep& a, const Rep& b) {
  check_rep(a);
  check_rep(b);
  if (a.modulus != b.modulus) throw Error(Errc::modulus_mismatch, "direct_sum: moduli differ");
  if (a.weight != b.weight)
    throw Error(Errc::weight_mismatch,
                "direct_sum: the obstruction alpha - beta does not vanish");
  return Rep{Nat(a.degree + b.degree), a.weight, a.modulus};
}

Rep stabilize(const Rep& rep, const Nat& k) {
  check_rep(rep);
  if (k < 1) throw Error(Errc::invalid_argument, "stabilize: k must be >= 1");
  return Rep{Nat(k * rep.degree), rep.weight, rep.modulus};
}

Rep apply(const Rep& rep, const Move& move) {
  switch (move.kind) {
    case Move::Kind::lambda: return lambda_power(rep, move.arg);
    case Move::Kind::tensor_power: return tensor_power(rep, move.arg);
    case Move::Kind::tensor: return tensor(rep, *move.other);
    case Move::Kind::direct_sum: return direct_sum(rep, *move.other);
    case Move::Kind::stabilize: return stabilize(rep, move.arg);
  }
  throw Error(Errc::internal, "apply: bad move kind");
}

Rep replay(const Rep& seed, const std::vector<Move>& trace) {
  Rep cur = seed;
  for (const Move& m : trace) cur = apply(cur, m);
  return cur;
}

std::string to_string(const Move& move) {
  std::ostringstream os;
  switch (move.kind) {
    case Move::Kind::lambda: os << "lambda(q=" << move.arg.get_str() << ")"; break;
    case Move::Kind::tensor_power: os << "tensor_power(r=" << move.arg.get_str() << ")"; break;
    case Move::Kind::tensor:
      os << "tensor(d=" << move.other->degree.get_str() << ",w=" << move.other->weight.get_str()
         << ")";
      break;
    case Move::Kind::direct_sum:
      os << "direct_sum(d=" << move.other->degree.get_str()
         << ",w=" << move.other->weight.get_str() << ")";
      break;
    case Move::Kind::stabilize: os << "stabilize(k=" << move.arg.get_str() << ")"; break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// minimize_degree
// ---------------------------------------------------------------------------

namespace {

constexpr uint64_t kDenseMaxBound = uint64_t(1) << 27;
constexpr uint64_t kDenseMaxCells = uint64_t(64) << 27;  // modulus * bound cap
constexpr uint64_t kU63Max = (uint64_t(1) << 63) - 1;

bool mul_fits(uint64_t a, uint64_t b, uint64_t limit, uint64_t& out) {
  if (__builtin_mul_overflow(a, b, &out)) return false;
  return out <= limit;
}

bool support_exact_u64(uint64_t d, const std::vector<uint64_t>& primes) {
  uint64_t r = d;
  for (uint64_t p : primes) {
    if (d % p != 0) return false;
    while (r % p == 0) r /= p;
  }
  return r == 1;
}

uint64_t inv_mod_u64(uint64_t a, uint64_t m) {
  if (m == 1) return 0;
  int64_t t = 0, newt = 1;
  int64_t r = int64_t(m), newr = int64_t(a % m);
  while (newr != 0) {
    int64_t q = r / newr;
    std::swap(t, newt);
    newt -= q * t;
    std::swap(r, newr);
    newr -= q * r;
  }
  if (t < 0) t += int64_t(m);
  return uint64_t(t);
}

// All x in [0, m) with a*x == b (mod m).
std::vector<uint64_t> solve_lin_cong(uint64_t a, uint64_t b, uint64_t m) {
  if (m == 1) return {0};
  a %= m;
  b %= m;
  const uint64_t g = std::gcd(a == 0 ? m : a, m);
  if (b % g != 0) return {};
  const uint64_t m1 = m / g;
  const uint64_t x0 = m1 == 1 ? 0 : ((b / g) % m1) * inv_mod_u64((a / g) % m1, m1) % m1;
  std::vector<uint64_t> out;
  out.reserve(g);
  for (uint64_t t = 0; t < g; ++t) out.push_back(x0 + t * m1);
  return out;
}

// C(n, k) truncated at cap + 1.
uint64_t binom_capped(uint64_t n, uint64_t k, uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > cap) return cap + 1;
  }
  return uint64_t(c);
}

// The d' with C(d', q) == value, if any.
std::optional<uint64_t> invert_binomial(uint64_t value, uint64_t q, uint64_t cap) {
  uint64_t lo = q, hi = std::min(value, cap);
  while (lo < hi) {
    uint64_t mid = lo + (hi - lo) / 2;
    if (binom_capped(mid, q, value) < value)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (binom_capped(lo, q, value) == value) return lo;
  return std::nullopt;
}

struct ReachQuery {
  virtual ~ReachQuery() = default;
  virtual bool reach(uint64_t d, uint64_t w) const = 0;
  // ascending visit of class-w degrees in [1, limit]; stop when f returns false
  virtual void scan_class(uint64_t w, uint64_t limit,
                          const std::function<bool(uint64_t)>& f) const = 0;
};

// Rebuilds a canonical derivation of a reachable state by inverting the
// moves against the final reachability sets; no forward provenance is kept.
class Reconstructor {
 public:
  Reconstructor(const ReachQuery& view, uint64_t seed_d, uint64_t seed_w, uint64_t m,
                std::vector<uint64_t> supp, uint64_t bound)
      : view_(view), seed_d_(seed_d), seed_w_(seed_w), m_(m), supp_(std::move(supp)),
        bound_(bound) {}

  std::vector<Move> trace_to(uint64_t d, uint64_t w) {
    std::vector<Move> out;
    if (!build(d, w, out))
      throw Error(Errc::internal, "trace reconstruction failed for a reachable state");
    return out;
  }

 private:
  Rep make_rep(uint64_t d, uint64_t w) const {
    return Rep{Nat(static_cast<unsigned long>(d)), Nat(static_cast<unsigned long>(w)),
               Nat(static_cast<unsigned long>(m_))};
  }

  bool spine(uint64_t d, uint64_t w, std::vector<Move>& out, Move&& tail) {
    const std::size_t base = out.size();
    if (build(d, w, out)) {
      out.push_back(std::move(tail));
      return true;
    }
    out.resize(base);
    return false;
  }

  bool build(uint64_t d, uint64_t w, std::vector<Move>& out) {
    if (d == seed_d_ && w == seed_w_) return true;
    if (d == 1) {
      // only (1, 0) lives at degree 1: the full exterior power of the seed
      out.push_back(Move{Move::Kind::lambda, Nat(static_cast<unsigned long>(seed_d_)), {}});
      return true;
    }
    if (busy_.count({d, w})) return false;
    busy_.insert({d, w});
    const bool ok = derive(d, w, out);
    busy_.erase({d, w});
    return ok;
  }

  bool derive(uint64_t d, uint64_t w, std::vector<Move>& out) {
    // exterior powers from a strictly smaller degree
    for (uint64_t q = 2; q < 64; ++q) {
      if (q + 1 > d) break;
      auto dp = invert_binomial(d, q, bound_);
      if (!dp || *dp >= d || *dp < 2) continue;
      for (uint64_t qq : {q, *dp - q}) {
        if (qq == 0 || qq > *dp) continue;
        for (uint64_t wp : solve_lin_cong(qq % m_, w, m_)) {
          if (!view_.reach(*dp, wp)) continue;
          if (spine(*dp, wp, out, Move{Move::Kind::lambda, Nat(static_cast<unsigned long>(qq)), {}}))
            return true;
        }
      }
    }
    // tensor powers
    for (uint64_t r = 2; r < 64; ++r) {
      Nat root;
      const Nat dn = Nat(static_cast<unsigned long>(d));
      if (mpz_root(root.get_mpz_t(), dn.get_mpz_t(), r) == 0) continue;
      if (root < 2) break;
      const uint64_t d0 = root.get_ui();
      for (uint64_t wp : solve_lin_cong(r % m_, w, m_)) {
        if (!view_.reach(d0, wp)) continue;
        if (spine(d0, wp, out, Move{Move::Kind::tensor_power, Nat(static_cast<unsigned long>(r)), {}}))
          return true;
      }
    }
    // tensor products over divisor splits
    for (uint64_t d1 = 2; d1 * d1 <= d; ++d1) {
      if (d % d1 != 0) continue;
      const uint64_t d2 = d / d1;
      for (uint64_t w1 = 0; w1 < m_; ++w1) {
        const uint64_t w2 = (w + m_ - w1 % m_) % m_;
        if (!view_.reach(d1, w1) || !view_.reach(d2, w2)) continue;
        uint64_t sd, sw, pd, pw;
        if (w2 != 0) {
          sd = d2, sw = w2, pd = d1, pw = w1;
        } else if (w1 != 0) {
          sd = d1, sw = w1, pd = d2, pw = w2;
        } else {
          continue;  // a weight-zero spine cannot ground at the seed
        }
        if (spine(sd, sw, out, Move{Move::Kind::tensor, Nat(), make_rep(pd, pw)})) return true;
      }
    }
    // direct sums within the weight class
    {
      bool found = false;
      view_.scan_class(w, d / 2, [&](uint64_t e) {
        if (!view_.reach(d - e, w)) return true;
        if (spine(d - e, w, out, Move{Move::Kind::direct_sum, Nat(), make_rep(e, w)})) {
          found = true;
          return false;
        }
        return true;
      });
      if (found) return true;
    }
    // prime stabilization steps
    for (uint64_t p : supp_) {
      if (d % p != 0) continue;
      if (!view_.reach(d / p, w)) continue;
      if (spine(d / p, w, out, Move{Move::Kind::stabilize, Nat(static_cast<unsigned long>(p)), {}}))
        return true;
    }
    // same-degree weight change: the (d-1)-th exterior power
    if (d >= 2) {
      for (uint64_t wp : solve_lin_cong((d - 1) % m_, w, m_)) {
        if (wp == w || !view_.reach(d, wp)) continue;
        if (spine(d, wp, out,
                  Move{Move::Kind::lambda, Nat(static_cast<unsigned long>(d - 1)), {}}))
          return true;
      }
    }
    return false;
  }

  const ReachQuery& view_;
  uint64_t seed_d_, seed_w_, m_;
  std::vector<uint64_t> supp_;
  uint64_t bound_;
  std::set<std::pair<uint64_t, uint64_t>> busy_;
};

struct SearchCommon {
  uint64_t bound, modulus, seed_d, seed_w, goal_w;
  std::vector<uint64_t> supp;
  const SearchOptions* opts;

  void settled_hooks(uint64_t d, uint64_t w, uint64_t& explored) const {
    ++explored;
    if (opts->on_settle) opts->on_settle(d, w);
    const uint64_t need = modulus / std::gcd(modulus, w == 0 ? modulus : w);
    if (d % need != 0)
      throw Error(Errc::internal, "reachable state violates the period-divides-degree shadow");
  }

  bool is_goal(uint64_t d, uint64_t w) const {
    return w == goal_w && support_exact_u64(d, supp);
  }
};

// Dense regime: one reachability bitset and one direct-sum closure per
// weight class, processed in ascending degree order.
class DenseSearch final : public ReachQuery {
 public:
  DenseSearch(const SearchCommon& c) : c_(c), classes_(c.modulus) {}

  std::optional<std::pair<uint64_t, uint64_t>> run(uint64_t& explored) {
    mark(c_.seed_d, c_.seed_w);
    mark(1, 0);  // lambda^n of the seed; m | n makes the weight vanish
    while (!heap_.empty()) {
      auto [d, w] = heap_.top();
      heap_.pop();
      c_.settled_hooks(d, w, explored);
      if (c_.is_goal(d, w)) return std::make_pair(d, w);
      expand(d, w);
    }
    return std::nullopt;
  }

  bool reach(uint64_t d, uint64_t w) const override {
    if (w >= c_.modulus || d < 1 || d > c_.bound || !classes_[w]) return false;
    const auto& bits = classes_[w]->reach;
    return (bits[d >> 6] >> (d & 63)) & 1;
  }

  void scan_class(uint64_t w, uint64_t limit,
                  const std::function<bool(uint64_t)>& f) const override {
    if (w >= c_.modulus || !classes_[w]) return;
    const auto& bits = classes_[w]->reach;
    const uint64_t cap = std::min(limit, c_.bound);
    for (uint64_t word = 0; word <= (cap >> 6); ++word) {
      uint64_t v = bits[word];
      while (v) {
        const uint64_t bit = uint64_t(__builtin_ctzll(v));
        v &= v - 1;
        const uint64_t x = (word << 6) | bit;
        if (x == 0) continue;
        if (x > cap) return;
        if (!f(x)) return;
      }
    }
  }

 private:
  struct ClassState {
    std::vector<uint64_t> reach;
    semigroup::SumClosure sums;
    ClassState(uint64_t bound) : reach((bound >> 6) + 2, 0), sums(bound) {}
  };

  ClassState& ensure(uint64_t w) {
    if (!classes_[w]) classes_[w] = std::make_unique<ClassState>(c_.bound);
    return *classes_[w];
  }

  void mark(uint64_t d, uint64_t w) {
    if (d < 1 || d > c_.bound) return;
    ClassState& cs = ensure(w);
    uint64_t& word = cs.reach[d >> 6];
    const uint64_t mask = uint64_t(1) << (d & 63);
    if (word & mask) return;
    word |= mask;
    heap_.emplace(d, w);
  }

  void expand(uint64_t d, uint64_t w) {
    const uint64_t m = c_.modulus;
    if (d >= 2) {
      // exterior powers; q and d-q share a degree but twist differently
      unsigned __int128 binom = 1;
      for (uint64_t q = 1; q <= d / 2; ++q) {
        binom = binom * (d - q + 1) / q;
        if (binom > c_.bound) break;
        const uint64_t deg = uint64_t(binom);
        mark(deg, (q % m) * (w % m) % m);
        mark(deg, ((d - q) % m) * (w % m) % m);
      }
      if ((d % m) * (w % m) % m != 0)
        throw Error(Errc::internal, "full exterior power of a reachable state has weight != 0");
      // tensor powers
      const uint64_t rcap = c_.opts->cap_tensor_power ? std::max<uint64_t>(m, 2) : 62;
      unsigned __int128 pw = d;
      for (uint64_t r = 2; r <= rcap; ++r) {
        pw *= d;
        if (pw > c_.bound) break;
        mark(uint64_t(pw), (r % m) * (w % m) % m);
      }
      // tensor with every reached partner of compatible size
      const uint64_t lim = std::min(d, c_.bound / d);
      for (uint64_t w2 = 0; w2 < m; ++w2) {
        if (!classes_[w2]) continue;
        scan_class(w2, lim, [&](uint64_t e) {
          if (e >= 2) mark(d * e, (w + w2) % m);
          return true;
        });
      }
    }
    // stabilization by the primes of m
    for (uint64_t p : c_.supp) {
      uint64_t t;
      if (mul_fits(p, d, c_.bound, t)) mark(t, w);
    }
    // direct-sum closure within the class
    ClassState& cs = ensure(w);
    scratch_.clear();
    if (cs.sums.add_generator(d, scratch_))
      for (uint64_t x : scratch_) mark(x, w);
  }

  SearchCommon c_;
  std::vector<std::unique_ptr<ClassState>> classes_;
  std::priority_queue<std::pair<uint64_t, uint64_t>, std::vector<std::pair<uint64_t, uint64_t>>,
                      std::greater<>>
      heap_;
  std::vector<uint64_t> scratch_;
};

// Lazy regime for bounds beyond the dense bitsets: hashed reachability,
// cursor-driven product enumeration, atom-based direct sums, and an
// explicit settle budget.
class LazySearch final : public ReachQuery {
 public:
  LazySearch(const SearchCommon& c) : c_(c) {}

  std::optional<std::pair<uint64_t, uint64_t>> run(uint64_t& explored) {
    mark(c_.seed_d, c_.seed_w, /*atom=*/true);
    mark(1, 0, /*atom=*/true);
    while (!heap_.empty()) {
      const Event ev = heap_.top();
      heap_.pop();
      if (ev.kind == Event::kProduct) {
        pop_product(ev);
        continue;
      }
      if (explored >= c_.opts->max_states)
        throw Error(Errc::budget_exceeded,
                    "minimize_degree: exploration budget exhausted before the space "
                    "below the bound was covered");
      c_.settled_hooks(ev.d, ev.w, explored);
      if (c_.is_goal(ev.d, ev.w)) return std::make_pair(ev.d, ev.w);
      expand(ev.d, ev.w);
    }
    return std::nullopt;
  }

  bool reach(uint64_t d, uint64_t w) const override { return marked_.count(key(d, w)) != 0; }

  void scan_class(uint64_t w, uint64_t limit,
                  const std::function<bool(uint64_t)>& f) const override {
    auto it = settled_by_class_.find(w);
    if (it == settled_by_class_.end()) return;
    for (uint64_t e : it->second) {
      if (e > limit) return;
      if (!f(e)) return;
    }
  }

 private:
  struct Event {
    enum Kind { kState = 0, kProduct = 1 };
    uint64_t value;
    Kind kind;
    uint64_t d, w;       // state payload
    uint64_t i, j;       // product cursor payload
    bool operator>(const Event& o) const {
      if (value != o.value) return value > o.value;
      if (kind != o.kind) return kind > o.kind;
      if (w != o.w) return w > o.w;
      if (d != o.d) return d > o.d;
      if (i != o.i) return i > o.i;
      return j > o.j;
    }
  };

  static uint64_t key(uint64_t d, uint64_t w) {
    uint64_t h = d * 0x9e3779b97f4a7c15ull;
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h ^ (d << 1) ^ w;
  }

  void mark(uint64_t d, uint64_t w, bool atom) {
    if (d < 1 || d > c_.bound) return;
    const uint64_t k = key(d, w);
    auto [it, fresh] = info_.try_emplace(k, Info{d, w, atom, false});
    if (fresh) {
      marked_.insert(k);
      heap_.push(Event{d, Event::kState, d, w, 0, 0});
      return;
    }
    Info& inf = it->second;
    if (atom && !inf.atom) {
      inf.atom = true;
      if (inf.settled) {
        // late atom discovery: pair with everything already settled here
        atoms_by_class_[w].push_back(d);
        for (uint64_t e : settled_by_class_[w]) add_checked(e, d, w);
      }
    }
  }

  void add_checked(uint64_t a, uint64_t b, uint64_t w) {
    uint64_t s;
    if (!__builtin_add_overflow(a, b, &s) && s <= c_.bound) mark(s, w, /*atom=*/false);
  }

  void pop_product(const Event& ev) {
    const auto& gi = settled_list_[ev.i];
    const auto& gj = settled_list_[ev.j];
    mark(ev.value, (gi.second + gj.second) % c_.modulus, /*atom=*/true);
    push_product(ev.i, ev.j + 1);
  }

  void push_product(uint64_t i, uint64_t j) {
    const uint64_t di = settled_list_[i].first;
    for (; j <= i; ++j) {
      const uint64_t dj = settled_list_[j].first;
      if (dj < 2) continue;  // degree-1 partner is the identity
      uint64_t prod;
      if (!mul_fits(di, dj, c_.bound, prod)) return;  // partners only grow
      heap_.push(Event{prod, Event::kProduct, 0, 0, i, j});
      return;
    }
  }

  void expand(uint64_t d, uint64_t w) {
    const uint64_t m = c_.modulus;
    Info& inf = info_.at(key(d, w));
    inf.settled = true;
    auto& cls = settled_by_class_[w];
    if (d >= 2) {
      unsigned __int128 binom = 1;
      for (uint64_t q = 1; q <= d / 2; ++q) {
        binom = binom * (d - q + 1) / q;
        if (binom > c_.bound) break;
        const uint64_t deg = uint64_t(binom);
        mark(deg, (q % m) * (w % m) % m, true);
        mark(deg, ((d - q) % m) * (w % m) % m, true);
      }
      if ((d % m) * (w % m) % m != 0)
        throw Error(Errc::internal, "full exterior power of a reachable state has weight != 0");
      const uint64_t rcap = c_.opts->cap_tensor_power ? std::max<uint64_t>(m, 2) : 62;
      unsigned __int128 pw = d;
      for (uint64_t r = 2; r <= rcap; ++r) {
        pw *= d;
        if (pw > c_.bound) break;
        mark(uint64_t(pw), (r % m) * (w % m) % m, true);
      }
    }
    for (uint64_t p : c_.supp) {
      uint64_t t;
      if (mul_fits(p, d, c_.bound, t)) mark(t, w, true);
    }
    // direct sums: pair with the known atoms of this class (complete: every
    // sum splits off one atom), plus the symmetric sweep when d is an atom
    cls.push_back(d);
    if (inf.atom) {
      atoms_by_class_[w].push_back(d);
      for (uint64_t e : cls) add_checked(e, d, w);
    } else {
      for (uint64_t a : atoms_by_class_[w]) {
        if (a > d) break;
        add_checked(d, a, w);
      }
    }
    // tensor products: one outstanding cursor per settled element
    settled_list_.emplace_back(d, w);
    if (d >= 2) push_product(settled_list_.size() - 1, 0);
  }

  struct Info {
    uint64_t d, w;
    bool atom;
    bool settled;
  };

  SearchCommon c_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> heap_;
  std::unordered_set<uint64_t> marked_;
  std::unordered_map<uint64_t, Info> info_;
  std::unordered_map<uint64_t, std::vector<uint64_t>> settled_by_class_;
  std::unordered_map<uint64_t, std::vector<uint64_t>> atoms_by_class_;
  std::vector<std::pair<uint64_t, uint64_t>> settled_list_;
};

}  // namespace

std::optional<SearchResult> minimize_degree(const Nat& n, const Nat& m, const Nat& bound,
                                            const SearchOptions& options) {
  if (n < 1 || m < 1) throw Error(Errc::invalid_argument, "minimize_degree: n, m must be positive");
  if (!mpz_divisible_p(n.get_mpz_t(), m.get_mpz_t()))
    throw Error(Errc::non_divisor, "minimize_degree: m does not divide n");
  if (bound < 1) throw Error(Errc::invalid_argument, "minimize_degree: bound must be >= 1");
  if (!n.fits_ulong_p() || !m.fits_ulong_p())
    throw Error(Errc::unsupported, "minimize_degree: n does not fit a machine word");
  if (bound > Nat(static_cast<unsigned long>(kU63Max)))
    throw Error(Errc::unsupported, "minimize_degree: bounds above 2^63-1 are not supported");

  SearchCommon c;
  c.bound = bound.get_ui();
  c.modulus = m.get_ui();
  c.seed_d = n.get_ui();
  c.seed_w = 1 % c.modulus;
  c.goal_w = 1 % c.modulus;
  for (const Nat& p : arith::support(m)) c.supp.push_back(p.get_ui());
  c.opts = &options;

  if (c.seed_d > c.bound) return std::nullopt;

  uint64_t explored = 0;
  std::optional<std::pair<uint64_t, uint64_t>> goal;
  std::unique_ptr<ReachQuery> view;

  const bool dense = !options.force_lazy && c.bound <= kDenseMaxBound &&
                     c.modulus <= 4096 && c.modulus * c.bound <= kDenseMaxCells;
  if (dense) {
    auto search = std::make_unique<DenseSearch>(c);
    goal = search->run(explored);
    view = std::move(search);
  } else {
    auto search = std::make_unique<LazySearch>(c);
    goal = search->run(explored);
    view = std::move(search);
  }
  if (!goal) return std::nullopt;

  Reconstructor rec(*view, c.seed_d, c.seed_w, c.modulus, c.supp, c.bound);
  SearchResult result;
  result.trace = rec.trace_to(goal->first, goal->second);
  result.minimal = Rep{Nat(static_cast<unsigned long>(goal->first)),
                       Nat(static_cast<unsigned long>(goal->second)), m};
  result.explored = explored;
  result.bound = bound;

  const Rep seed{n, Nat(static_cast<unsigned long>(c.seed_w)), m};
  const Rep replayed = replay(seed, result.trace);
  if (replayed.degree != result.minimal.degree || replayed.weight != result.minimal.weight)
    throw Error(Errc::internal, "minimize_degree: trace does not replay to the result");
  return result;
}

}  // namespace perind::calculus
