#pragma once

// Record-setting integers: abundancy classes, highly composite and
// superabundant record scans (exact keys), and colossally abundant
// construction from epsilon with a definitional brute-force oracle.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "abl/arith.hpp"
#include "abl/factored.hpp"
#include "abl/rational.hpp"
#include "abl/sieve.hpp"

namespace abl {

enum class AbundancyClass { deficient, perfect, abundant };

inline AbundancyClass abundancy_class(const FactoredInteger& f) {
  BigInt s = sigma(f);
  BigInt n2 = 2 * f.value();
  if (s < n2) return AbundancyClass::deficient;
  if (s == n2) return AbundancyClass::perfect;
  return AbundancyClass::abundant;
}

// sigma(N) = m N exactly (the "multiperfect" reading of m-abundant).
inline bool multiperfect_eq(const FactoredInteger& f, unsigned m) {
  return sigma(f) == m * f.value();
}

// sigma(N) >= m N (the inequality reading used by the mN claim).
inline bool m_abundant_ge(const FactoredInteger& f, unsigned m) {
  return sigma(f) >= m * f.value();
}

// ---------------------------------------------------------------------------
// Record scans
// ---------------------------------------------------------------------------

enum class RecordKind { highly_composite, superabundant };

struct RecordEntry {
  std::uint64_t n = 0;
  // key: sigma0(n) for highly composite, sigma(n)/n for superabundant
  std::uint64_t key_numerator = 0;
  std::uint64_t key_denominator = 1;
  std::uint64_t predecessor_numerator = 0;
  std::uint64_t predecessor_denominator = 1;
};

// Exhaustive scan; exact integer/rational key comparisons throughout. The
// record reduction is order-dependent, so sigma evaluation may run in blocks
// but records are merged serially here.
inline std::vector<RecordEntry> record_scan(const PrimeTable& table,
                                            std::uint64_t limit, RecordKind kind) {
  if (limit < 1) throw std::domain_error("record_scan: limit >= 1");
  std::vector<RecordEntry> records;
  std::uint64_t best_num = 0, best_den = 1;
  factor_scan(table, 1, limit + 1, [&](const NValues& v) {
    bool is_record;
    std::uint64_t num, den;
    if (kind == RecordKind::highly_composite) {
      num = v.sigma0;
      den = 1;
      is_record = best_num == 0 || num > best_num;
    } else {
      // sigma(n)/n > best  <=>  sigma(n) * best_den > best_num * n
      num = v.sigma;
      den = v.n;
      is_record = best_num == 0 ||
                  static_cast<unsigned __int128>(num) * best_den >
                      static_cast<unsigned __int128>(best_num) * den;
    }
    if (is_record) {
      RecordEntry e;
      e.n = v.n;
      e.key_numerator = num;
      e.key_denominator = den;
      e.predecessor_numerator = best_num;
      e.predecessor_denominator = best_den;
      records.push_back(e);
      best_num = num;
      best_den = den;
    }
  });
  return records;
}

// Highly composite structure check: exponents non-increasing over the primes
// 2, 3, 5, ... with no gaps in support.
inline bool hc_structure_ok(const FactoredInteger& f, const PrimeTable& table) {
  const auto& fs = f.factors();
  unsigned prev_exp = ~0u;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (fs[i].prime != table.primes()[i]) return false;  // gap in support
    if (fs[i].exponent > prev_exp) return false;
    prev_exp = fs[i].exponent;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Colossally abundant
// ---------------------------------------------------------------------------

// Exact per-prime exponent: the largest v with sigma(p^v)/p^{v(1+eps)}
// still increasing; ties break to the smaller v (strict > required to step).
// eps = a/b exactly; the step test sigma(p^{v+1}) > sigma(p^v) p^{1+eps}
// cross-multiplies to sigma(p^{v+1})^b > sigma(p^v)^b p^{a+b}.
inline unsigned ca_exponent(std::uint64_t p, const Ratio& eps) {
  if (eps <= 0) throw std::domain_error("ca_exponent: eps > 0 required");
  if (eps.get_den() > 1000000 || eps.get_num() > 1000000) {
    throw std::invalid_argument(
        "ca_exponent: eps must be a small rational (exact comparisons take "
        "eps-th powers); pass e.g. 1/10 instead of a raw double");
  }
  const unsigned long a = mpz_get_ui(eps.get_num().get_mpz_t());
  const unsigned long b = mpz_get_ui(eps.get_den().get_mpz_t());
  unsigned v = 0;
  BigInt sig_v = 1;  // sigma(p^0)
  BigInt p_big = to_big(p);
  BigInt p_ab = big_pow(p_big, a + b);
  while (true) {
    BigInt sig_next = sig_v * p_big + 1;  // sigma(p^{v+1})
    BigInt lhs = big_pow(sig_next, b);
    BigInt rhs = big_pow(sig_v, b) * p_ab;
    if (lhs > rhs) {
      ++v;
      sig_v = sig_next;
    } else {
      return v;
    }
  }
}

// Alaoglu-Erdos closed form (floating); cross-check for the exact argmax.
inline long ca_exponent_closed_form(std::uint64_t p, double eps) {
  const double pd = static_cast<double>(p);
  const double num = std::pow(pd, 1.0 + eps) - 1.0;
  const double den = std::pow(pd, eps) - 1.0;
  return static_cast<long>(std::floor(std::log(num / den) / std::log(pd))) - 1;
}

inline FactoredInteger colossally_abundant(const Ratio& eps, const PrimeTable& table) {
  if (eps <= 0) throw std::domain_error("colossally_abundant: eps > 0");
  std::vector<std::pair<std::uint64_t, unsigned>> pe;
  unsigned prev = ~0u;
  for (std::uint64_t p : table.primes()) {
    unsigned v = ca_exponent(p, eps);
    if (v == 0) break;
    if (v > prev) {
      throw std::logic_error("colossally_abundant: exponents not non-increasing");
    }
    prev = v;
    pe.emplace_back(p, v);
  }
  return FactoredInteger::from_u64_factors(pe);
}

// Definitional oracle: the largest M <= m_max maximizing sigma(M)/M^{1+eps}.
// Floating compare with exact-rational escalation for near ties:
// key(M) >= key(B)  <=>  sigma(M)^b B^{a+b} >= sigma(B)^b M^{a+b}.
inline std::uint64_t ca_oracle(const Ratio& eps, std::uint64_t m_max,
                               const PrimeTable& table) {
  if (eps <= 0) throw std::domain_error("ca_oracle: eps > 0");
  if (eps.get_den() > 1000000 || eps.get_num() > 1000000) {
    throw std::invalid_argument("ca_oracle: eps must be a small rational");
  }
  const double eps_d = mpq_get_d(eps.get_mpq_t());
  const unsigned long a = mpz_get_ui(eps.get_num().get_mpz_t());
  const unsigned long b = mpz_get_ui(eps.get_den().get_mpz_t());
  std::uint64_t best = 1;
  std::uint64_t best_sigma = 1;
  double best_log_key = 0.0;  // log sigma(1) - (1+eps) log 1
  factor_scan(table, 2, m_max + 1, [&](const NValues& v) {
    const double log_key = std::log(static_cast<double>(v.sigma)) -
                           (1.0 + eps_d) * std::log(static_cast<double>(v.n));
    if (log_key < best_log_key - 1e-9) return;
    // exact comparison, >= so the largest maximizer wins
    BigInt lhs = big_pow(to_big(v.sigma), b) * big_pow(to_big(best), a + b);
    BigInt rhs = big_pow(to_big(best_sigma), b) * big_pow(to_big(v.n), a + b);
    if (lhs >= rhs) {
      best = v.n;
      best_sigma = v.sigma;
      best_log_key = std::log(static_cast<double>(best_sigma)) -
                     (1.0 + eps_d) * std::log(static_cast<double>(best));
    }
  });
  return best;
}

// ---------------------------------------------------------------------------
// The mN abundance claim, tested in its three readings
// ---------------------------------------------------------------------------

struct MnAbundanceReport {
  // counterexamples to sigma(mN) >= (m+1) * mN (the definitional reading)
  std::vector<std::pair<unsigned, std::uint64_t>> strict_counterexamples;
  // counterexamples to sigma(mN) >= (m+1) sigma(N) (the one-line argument)
  std::vector<std::pair<unsigned, std::uint64_t>> proofline_counterexamples;
  // counterexamples to sigma(mN) >= (m+1) N (the weak reading; expected none)
  std::vector<std::pair<unsigned, std::uint64_t>> weak_counterexamples;
  std::uint64_t pairs_tested = 0;
};

inline MnAbundanceReport mn_abundance_report(const PrimeTable& table,
                                             std::uint64_t n_limit,
                                             unsigned m_max = 10) {
  MnAbundanceReport rep;
  factor_scan(table, 2, n_limit + 1, [&](const NValues& v) {
    if (v.sigma <= 2 * v.n) return;  // abundant N only
    for (unsigned m = 1; m <= m_max; ++m) {
      rep.pairs_tested++;
      FactoredInteger mn = factorize(m * v.n, table);
      BigInt smn = sigma(mn);
      if (smn < BigInt(m + 1) * to_big(m * v.n)) {
        if (rep.strict_counterexamples.size() < 32) {
          rep.strict_counterexamples.emplace_back(m, v.n);
        }
      }
      if (smn < BigInt(m + 1) * to_big(v.sigma)) {
        if (rep.proofline_counterexamples.size() < 32) {
          rep.proofline_counterexamples.emplace_back(m, v.n);
        }
      }
      if (smn < BigInt(m + 1) * to_big(v.n)) {
        if (rep.weak_counterexamples.size() < 32) {
          rep.weak_counterexamples.emplace_back(m, v.n);
        }
      }
    }
  });
  return rep;
}

}  // namespace abl
