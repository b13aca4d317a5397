#include "construct.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "lemma.hpp"
#include "semigroup.hpp"

namespace perind::construct {

namespace {

std::string join(const std::vector<Nat>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i].get_str();
  return os.str();
}

lemma::QSetWitness resolve_witness(const Nat& n, const Nat& m, QMode mode,
                                   const std::vector<Nat>& custom_q) {
  switch (mode) {
    case QMode::minimal: return lemma::minimal_witness(n, m);
    case QMode::maximal: return lemma::maximal_witness(n, m);
    case QMode::custom: {
      auto check = lemma::check_witness(n, m, custom_q);
      if (!check.ok)
        throw Error(Errc::invalid_argument, "synthesize: custom q-set rejected: " + check.failure);
      return *std::move(check.witness);
    }
  }
  throw Error(Errc::internal, "resolve_witness: bad mode");
}

// Column dimensions s_i = C(n, q_i)^{r_i} with r_i the least positive
// inverse of q_i modulo m.
void build_columns(const Nat& n, const Nat& m, const std::vector<Nat>& qs, std::vector<Nat>& r,
                   std::vector<Nat>& s) {
  for (const Nat& q : qs) {
    Nat ri = arith::mod_inverse(q, m);
    if (!ri.fits_ulong_p()) throw Error(Errc::unsupported, "synthesize: inverse exponent too large");
    Nat si;
    Nat base = arith::binomial(n, q);
    mpz_pow_ui(si.get_mpz_t(), base.get_mpz_t(), ri.get_ui());
    r.push_back(std::move(ri));
    s.push_back(std::move(si));
  }
}

Nat formula_bound(const Nat& n, const Nat& m) {
  const Nat base = std::max(n, m);
  unsigned long e = 0;
  for (Nat t = 1; t < n; t <<= 1) ++e;  // ceil(log2 n)
  if (e == 0) e = 1;
  Nat out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

Certificate trivial_certificate(const Nat& n) {
  Certificate cert;
  cert.n = n;
  cert.m = 1;
  cert.big_n = 1;
  return cert;
}

Certificate support_match_certificate(const Nat& n, const Nat& m) {
  Certificate cert;
  cert.n = n;
  cert.m = m;
  cert.q_set = {Nat(1)};
  cert.r = {arith::mod_inverse(1, m)};
  cert.s = {n};
  cert.coefficients = {Nat(1)};
  cert.big_n = n;
  cert.support_m = arith::support(m);
  cert.support_n = arith::support(n);
  return cert;
}

void require_instance(const Nat& n, const Nat& m) {
  if (n < 1 || m < 1) throw Error(Errc::invalid_argument, "n and m must be positive");
  if (!mpz_divisible_p(n.get_mpz_t(), m.get_mpz_t()))
    throw Error(Errc::non_divisor, "m does not divide n");
}

}  // namespace

std::optional<Certificate> synthesize(const Nat& n, const Nat& m, QMode mode,
                                      const std::vector<Nat>& custom_q,
                                      const std::optional<Nat>& bound) {
  require_instance(n, m);
  if (m == 1) return trivial_certificate(n);
  if (arith::support(n) == arith::support(m)) return support_match_certificate(n, m);

  lemma::QSetWitness wit = resolve_witness(n, m, mode, custom_q);
  Certificate cert;
  cert.n = n;
  cert.m = m;
  cert.q_set = wit.qs;
  build_columns(n, m, cert.q_set, cert.r, cert.s);
  cert.support_m = arith::support(m);

  const Nat effective = bound ? *bound : default_bound(n, m, mode, custom_q);
  auto found = semigroup::min_support_constrained(cert.s, cert.support_m, effective);
  if (!found) return std::nullopt;
  cert.big_n = found->first;
  cert.coefficients = found->second.coefficients;
  cert.support_n = arith::support(cert.big_n);
  return cert;
}

VerifyReport verify(const Certificate& cert) {
  VerifyReport report;
  auto clause = [&report](const std::string& name, bool ok, const std::string& detail) {
    report.clauses.push_back(VerifyClause{name, ok, detail});
    return ok;
  };

  bool shape_ok =
      cert.n >= 1 && cert.m >= 1 && cert.q_set.size() == cert.r.size() &&
      cert.q_set.size() == cert.s.size() && cert.q_set.size() == cert.coefficients.size();
  if (cert.q_set.empty() && cert.m != 1) shape_ok = false;
  clause("shape", shape_ok,
         shape_ok ? "columns aligned" : "misaligned columns or empty q-set with m > 1");
  if (!shape_ok) return report;

  const bool div_ok = mpz_divisible_p(cert.n.get_mpz_t(), cert.m.get_mpz_t());
  clause("divides", div_ok, div_ok ? "m | n" : "m does not divide n");

  bool range_ok = true, coprime_ok = true, inverse_ok = true, dim_ok = true;
  std::string range_bad, coprime_bad, inverse_bad, dim_bad;
  for (std::size_t i = 0; i < cert.q_set.size(); ++i) {
    const Nat& q = cert.q_set[i];
    if (q < 1 || q >= cert.n) {
      range_ok = false;
      if (range_bad.empty()) range_bad = "q = " + q.get_str();
    }
    Nat g;
    mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), cert.m.get_mpz_t());
    if (g != 1) {
      coprime_ok = false;
      if (coprime_bad.empty()) coprime_bad = "gcd(" + q.get_str() + ", m) = " + g.get_str();
    }
    if (cert.r[i] < 1 || Nat(q * cert.r[i] % cert.m) != 1 % cert.m) {
      inverse_ok = false;
      if (inverse_bad.empty())
        inverse_bad = "q*r = " + Nat(q * cert.r[i]).get_str() + " != 1 (mod m) at column " +
                      std::to_string(i);
    }
    if (range_ok && cert.r[i] >= 1 && cert.r[i].fits_ulong_p()) {
      Nat expect;
      Nat base = arith::binomial(cert.n, q);
      mpz_pow_ui(expect.get_mpz_t(), base.get_mpz_t(), cert.r[i].get_ui());
      if (expect != cert.s[i]) {
        dim_ok = false;
        if (dim_bad.empty())
          dim_bad = "s[" + std::to_string(i) + "] != C(n, q)^r";
      }
    } else if (!cert.r[i].fits_ulong_p()) {
      dim_ok = false;
      dim_bad = "exponent r out of checkable range";
    }
  }
  clause("q-range", range_ok, range_ok ? "all q in [1, n-1]" : range_bad);
  clause("q-coprime", coprime_ok, coprime_ok ? "all q coprime to m" : coprime_bad);
  clause("inverse", inverse_ok, inverse_ok ? "q*r == 1 (mod m) throughout" : inverse_bad);
  clause("dimension", dim_ok, dim_ok ? "s_i = C(n, q_i)^{r_i} exactly" : dim_bad);

  Nat sum = 0;
  for (std::size_t i = 0; i < cert.s.size(); ++i) sum += cert.coefficients[i] * cert.s[i];
  const bool comb_ok = cert.q_set.empty() ? cert.big_n == 1 : sum == cert.big_n;
  clause("combination", comb_ok,
         comb_ok ? "N = sum of c_i * s_i"
                 : "sum = " + sum.get_str() + " but N = " + cert.big_n.get_str());

  bool support_ok = cert.big_n >= 1;
  std::string supp_bad;
  if (support_ok) {
    const arith::PrimeSupport sm = arith::support(cert.m);
    const arith::PrimeSupport sn = arith::support(cert.big_n);
    support_ok = sm == sn && sm == cert.support_m && sn == cert.support_n;
    if (!support_ok)
      supp_bad = "Supp(N) = {" + join(sn) + "} vs Supp(m) = {" + join(sm) + "}";
  } else {
    supp_bad = "N must be positive";
  }
  clause("support", support_ok, support_ok ? "Supp(N) = Supp(m) exactly" : supp_bad);

  report.ok = true;
  for (const auto& c : report.clauses) report.ok = report.ok && c.ok;
  return report;
}

Nat paper_bound(const Nat& n, const Nat& m, QMode mode, const std::vector<Nat>& custom_q) {
  require_instance(n, m);
  if (m == 1) throw Error(Errc::invalid_argument, "paper_bound: requires m > 1");
  if (arith::support(n) == arith::support(m)) return n;

  lemma::QSetWitness wit = resolve_witness(n, m, mode, custom_q);
  std::vector<Nat> r, s;
  build_columns(n, m, wit.qs, r, s);

  Nat g = 0;
  for (const Nat& v : s) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  const arith::PrimeSupport supp_m = arith::support(m);

  Nat threshold;  // every multiple of `step` above it is representable
  Nat step = g;
  try {
    semigroup::SemigroupInstance inst = semigroup::apery_set(s);
    threshold = g * (semigroup::frobenius(inst) + 1);
  } catch (const Error& e) {
    if (e.code() != Errc::budget_exceeded) throw;
    // two-generator fallback: scan pairs by product for one whose gcd keeps
    // the needed divisibility inside Supp(m)
    std::vector<Nat> norm;
    for (const Nat& v : s) norm.push_back(v / g);
    std::sort(norm.begin(), norm.end());
    norm.erase(std::unique(norm.begin(), norm.end()), norm.end());
    bool found = false;
    Nat best_threshold, best_step;
    for (std::size_t i = 0; i < norm.size() && !found; ++i) {
      for (std::size_t j = i + 1; j < norm.size(); ++j) {
        Nat h;
        mpz_gcd(h.get_mpz_t(), norm[i].get_mpz_t(), norm[j].get_mpz_t());
        if (!arith::support_subset(g * h, supp_m)) continue;
        // multiples of h at or above t_i*t_j/h are sums of the pair
        best_threshold = g * (norm[i] * norm[j] / h);
        best_step = g * h;
        found = true;
        break;
      }
    }
    if (!found)
      throw Error(Errc::unsupported,
                  "paper_bound: no generator pair yields a usable Frobenius threshold");
    threshold = best_threshold;
    step = best_step;
  }

  arith::SmoothStream stream(supp_m, 1, /*exact=*/true);
  while (auto cand = stream.next()) {
    if (*cand <= threshold) continue;
    if (!mpz_divisible_p(cand->get_mpz_t(), step.get_mpz_t())) continue;
    return *cand;
  }
  throw Error(Errc::internal, "paper_bound: exact-support stream ended unexpectedly");
}

Nat default_bound(const Nat& n, const Nat& m, QMode mode, const std::vector<Nat>& custom_q) {
  require_instance(n, m);
  if (m == 1 || arith::support(n) == arith::support(m)) return std::max(n, Nat(1));
  // the existence threshold guarantees the search has room to succeed; the
  // size formula only acts as a floor
  Nat bound = formula_bound(n, m);
  try {
    bound = std::max(bound, paper_bound(n, m, mode, custom_q));
  } catch (const Error& e) {
    if (e.code() != Errc::unsupported && e.code() != Errc::budget_exceeded) throw;
  }
  return bound;
}

std::string to_json(const Certificate& cert) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["n"] = cert.n.get_str();
  j["m"] = cert.m.get_str();
  auto list = [](const std::vector<Nat>& xs) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const Nat& x : xs) a.push_back(x.get_str());
    return a;
  };
  j["q_set"] = list(cert.q_set);
  j["r"] = list(cert.r);
  j["s"] = list(cert.s);
  j["coefficients"] = list(cert.coefficients);
  j["N"] = cert.big_n.get_str();
  j["support_m"] = list(cert.support_m);
  j["support_N"] = list(cert.support_n);
  return j.dump();
}

namespace {

Nat parse_nat(const nlohmann::json& v, const std::string& where) {
  if (!v.is_string()) throw Error(Errc::parse_error, "certificate: " + where + " must be a decimal string");
  const std::string s = v.get<std::string>();
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw Error(Errc::parse_error, "certificate: " + where + " is not a decimal natural");
  return Nat(s);
}

std::vector<Nat> parse_list(const nlohmann::json& v, const std::string& where) {
  if (!v.is_array()) throw Error(Errc::parse_error, "certificate: " + where + " must be an array");
  std::vector<Nat> out;
  for (const auto& e : v) out.push_back(parse_nat(e, where + " entry"));
  return out;
}

}  // namespace

Certificate from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, std::string("certificate: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(Errc::parse_error, "certificate: document must be an object");
  static const char* kKeys[] = {"version", "n", "m",         "q_set",     "r",
                                "s",       "coefficients", "N", "support_m", "support_N"};
  for (const char* k : kKeys)
    if (!j.contains(k)) throw Error(Errc::parse_error, std::string("certificate: missing key ") + k);
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : kKeys) known = known || it.key() == k;
    if (!known) throw Error(Errc::parse_error, "certificate: unknown key " + it.key());
  }
  if (!j["version"].is_number_integer() || j["version"].get<int>() != 1)
    throw Error(Errc::parse_error, "certificate: unsupported version");
  Certificate cert;
  cert.n = parse_nat(j["n"], "n");
  cert.m = parse_nat(j["m"], "m");
  cert.q_set = parse_list(j["q_set"], "q_set");
  cert.r = parse_list(j["r"], "r");
  cert.s = parse_list(j["s"], "s");
  cert.coefficients = parse_list(j["coefficients"], "coefficients");
  cert.big_n = parse_nat(j["N"], "N");
  cert.support_m = parse_list(j["support_m"], "support_m");
  cert.support_n = parse_list(j["support_N"], "support_N");
  return cert;
}

}  // namespace perind::construct
