#pragma once

// Harmonic and prime-reciprocal sums, Euler products over primes, Mertens
// constants, and comparison of empirical residuals against explicit
// envelopes. Sums are compensated; products are exponentials of compensated
// log-sums (direct rational products are cross-checked in tests for small x).

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "abl/constants.hpp"
#include "abl/factored.hpp"
#include "abl/kahan.hpp"
#include "abl/primes.hpp"
#include "abl/report.hpp"

namespace abl {

// Readings of the unconditional remainder envelope for R(x) in
// sum 1/p = loglog x + B + R(x):
//   printed    1/(10 log^2 x) + 4/(15 log^2 x)   (as circulated; self-inconsistent)
//   corrected  1/(10 log x)   + 4/(15 log^2 x)   (the Rosser-Schoenfeld form)
//   log3       1/(10 log^2 x) + 4/(15 log^3 x)   (alternative rendering; fails
//                                                 empirically below ~2000)
enum class EnvelopeVariant { printed, corrected, log3 };

inline double mertens_envelope(double x, EnvelopeVariant v) {
  const double L = std::log(x);
  switch (v) {
    case EnvelopeVariant::printed: return 1.0 / (10 * L * L) + 4.0 / (15 * L * L);
    case EnvelopeVariant::corrected: return 1.0 / (10 * L) + 4.0 / (15 * L * L);
    case EnvelopeVariant::log3: return 1.0 / (10 * L * L) + 4.0 / (15 * L * L * L);
  }
  return 0;
}

// Conditional (RH) envelope (3 log x + 4)/(8 pi sqrt x); reported, never gated.
inline double mertens_envelope_rh(double x) {
  return (3 * std::log(x) + 4) / (8 * std::numbers::pi * std::sqrt(x));
}

struct TailSum {
  double value = 0;
  std::uint64_t truncated_at = 0;  // the table limit the tail stops at
};

// Prefix/suffix accumulations over the table's primes, built once and shared.
class PrimeSums {
 public:
  explicit PrimeSums(const PrimeTable& table) : table_(table) {
    const auto& ps = table.primes();
    inv_p_.reserve(ps.size());
    log1m_.reserve(ps.size());
    log1p_.reserve(ps.size());
    KahanSum<double> si, sm, sp;
    for (std::uint64_t p : ps) {
      const double ip = 1.0 / static_cast<double>(p);
      si.add(ip);
      sm.add(std::log1p(-ip));
      sp.add(std::log1p(ip));
      inv_p_.push_back(si.value());
      log1m_.push_back(sm.value());
      log1p_.push_back(sp.value());
    }
    // suffix of the inner tail sum_{n>=2} 1/(n p^n) = -log(1-1/p) - 1/p
    inner_tail_suffix_.assign(ps.size() + 1, 0.0);
    KahanSum<double> st;
    for (std::size_t i = ps.size(); i-- > 0;) {
      const double ip = 1.0 / static_cast<double>(ps[i]);
      st.add(-std::log1p(-ip) - ip);
      inner_tail_suffix_[i] = st.value();
    }
  }

  const PrimeTable& table() const { return table_; }

  double inv_p_upto(double x) const {
    std::size_t k = table_.pi(x);
    return k == 0 ? 0.0 : inv_p_[k - 1];
  }
  double log_one_minus_upto(double x) const {
    std::size_t k = table_.pi(x);
    return k == 0 ? 0.0 : log1m_[k - 1];
  }
  double log_one_plus_upto(double x) const {
    std::size_t k = table_.pi(x);
    return k == 0 ? 0.0 : log1p_[k - 1];
  }
  // sum over primes p with x < p <= limit of the inner tail terms
  double inner_tail_beyond(double x) const {
    std::size_t k = table_.pi(x);
    return inner_tail_suffix_[k];
  }
  double inner_tail_all() const { return inner_tail_suffix_[0]; }

 private:
  const PrimeTable& table_;
  std::vector<double> inv_p_;
  std::vector<double> log1m_;
  std::vector<double> log1p_;
  std::vector<double> inner_tail_suffix_;
};

// sum_{x < p <= limit} sum_{n>=2} 1/(n p^n), inner sums in closed form.
inline TailSum tail_sum(const PrimeSums& sums, double x) {
  if (x < 2 || x >= static_cast<double>(sums.table().limit())) {
    throw std::out_of_range("tail_sum: need 2 <= x < table limit");
  }
  return {sums.inner_tail_beyond(x), sums.table().limit()};
}

// ---------------------------------------------------------------------------
// Prime-reciprocal sums against their predicted main terms
// ---------------------------------------------------------------------------

enum class PrimeSumVariant { inv_p, inv_p_minus_1, inv_p_plus_1, ap };

struct PrimeSumParams {
  std::uint64_t residue = 0;  // for ap
  std::uint64_t modulus = 1;
  EnvelopeVariant envelope = EnvelopeVariant::corrected;
  // fitted constant for ap's B_{a,q}; when absent the sample reports the raw
  // empirical - main difference as residual with a zero constant.
  std::optional<double> fitted_constant;
};

inline double euler_phi_u64(std::uint64_t q) {
  std::uint64_t result = q;
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p == 0) {
      while (q % p == 0) q /= p;
      result -= result / p;
    }
  }
  if (q > 1) result -= result / q;
  return result;
}

inline RemainderSample prime_sum(const PrimeSums& sums, double x,
                                 PrimeSumVariant variant,
                                 const PrimeSumParams& params = {}) {
  if (x < 2 || x > static_cast<double>(sums.table().limit())) {
    throw std::out_of_range("prime_sum: x outside table range");
  }
  const double llx = std::log(std::log(x));
  switch (variant) {
    case PrimeSumVariant::inv_p: {
      const double emp = sums.inv_p_upto(x);
      return RemainderSample::make(x, emp, llx + mertens_B,
                                   mertens_envelope(x, params.envelope));
    }
    case PrimeSumVariant::inv_p_minus_1: {
      // 1/(p-1) = 1/p + 1/(p(p-1)); A_- = B + sum_p 1/(p(p-1))
      KahanSum<double> s;
      for (std::uint64_t p : sums.table().primes()) {
        if (static_cast<double>(p) > x) break;
        s.add(1.0 / (static_cast<double>(p) - 1.0));
      }
      KahanSum<double> corr;
      for (std::uint64_t p : sums.table().primes()) {
        corr.add(1.0 / (static_cast<double>(p) * (static_cast<double>(p) - 1.0)));
      }
      const double a_minus = mertens_B + corr.value();
      return RemainderSample::make(x, s.value(), llx + a_minus,
                                   mertens_envelope(x, params.envelope));
    }
    case PrimeSumVariant::inv_p_plus_1: {
      // 1/(p+1) = 1/p - 1/(p(p+1)); A_+ = B - sum_p 1/(p(p+1))
      KahanSum<double> s;
      for (std::uint64_t p : sums.table().primes()) {
        if (static_cast<double>(p) > x) break;
        s.add(1.0 / (static_cast<double>(p) + 1.0));
      }
      KahanSum<double> corr;
      for (std::uint64_t p : sums.table().primes()) {
        corr.add(1.0 / (static_cast<double>(p) * (static_cast<double>(p) + 1.0)));
      }
      const double a_plus = mertens_B - corr.value();
      return RemainderSample::make(x, s.value(), llx + a_plus,
                                   mertens_envelope(x, params.envelope));
    }
    case PrimeSumVariant::ap: {
      if (params.modulus < 1) throw std::domain_error("prime_sum: modulus >= 1");
      KahanSum<double> s;
      for (std::uint64_t p : sums.table().primes()) {
        if (static_cast<double>(p) > x) break;
        if (p % params.modulus == params.residue % params.modulus) {
          s.add(1.0 / static_cast<double>(p));
        }
      }
      const double phi_q = euler_phi_u64(params.modulus);
      const double c = params.fitted_constant.value_or(0.0);
      // O_q(1/log x) envelope with unit constant unless a fit supplies one
      return RemainderSample::make(x, s.value(), llx / phi_q + c,
                                   1.0 / std::log(x));
    }
  }
  throw std::logic_error("prime_sum: unreachable");
}

// ---------------------------------------------------------------------------
// Euler products over primes
// ---------------------------------------------------------------------------

enum class EulerProductVariant { one_minus, p_over_pm1, one_plus };

struct EulerProductParams {
  std::optional<double> fitted_one_plus_constant;  // for O(1/(x log x))
};

inline RemainderSample euler_product(const PrimeSums& sums, double x,
                                     EulerProductVariant variant,
                                     const EulerProductParams& params = {}) {
  if (x < 2 || x > static_cast<double>(sums.table().limit())) {
    throw std::out_of_range("euler_product: x outside table range");
  }
  const double L = std::log(x);
  const double half_inv_sq = 1.0 / (2 * L * L);
  switch (variant) {
    case EulerProductVariant::one_minus: {
      const double emp = std::exp(sums.log_one_minus_upto(x));
      const double main = std::exp(-euler_gamma) / L;
      return RemainderSample::make(x, emp, main, main * half_inv_sq);
    }
    case EulerProductVariant::p_over_pm1: {
      const double emp = std::exp(-sums.log_one_minus_upto(x));
      const double main = exp_gamma * L;
      return RemainderSample::make(x, emp, main, main * half_inv_sq);
    }
    case EulerProductVariant::one_plus: {
      const double emp = std::exp(sums.log_one_plus_upto(x));
      const double main = six_over_pi_sq * exp_gamma * L;
      const double c = params.fitted_one_plus_constant.value_or(1.0);
      return RemainderSample::make(x, emp, main, c / (x * L));
    }
  }
  throw std::logic_error("euler_product: unreachable");
}

// ---------------------------------------------------------------------------
// Harmonic and quasiharmonic sums
// ---------------------------------------------------------------------------

enum class HarmonicVariant { plain, ap, coprime, squarefree, log_power, inverse_log };

struct HarmonicParams {
  std::uint64_t residue = 0;       // ap
  std::uint64_t modulus = 1;       // ap
  std::vector<std::uint64_t> coprime_primes;  // coprime: prime support of N
  double phi_over_n = 1.0;                    // coprime: phi(N)/N
  unsigned log_exponent = 1;       // log_power's k
  std::optional<double> fitted_constant;
  std::optional<double> fitted_envelope_constant;
};

inline RemainderSample harmonic_sum(double x, HarmonicVariant variant,
                                    const HarmonicParams& params = {}) {
  const double domain_min = variant == HarmonicVariant::inverse_log ? 2.0 : 1.0;
  if (x < domain_min) throw std::domain_error("harmonic_sum: x below domain minimum");
  const std::uint64_t xi = static_cast<std::uint64_t>(x);
  KahanSum<double> s;
  switch (variant) {
    case HarmonicVariant::plain: {
      for (std::uint64_t n = 1; n <= xi; ++n) s.add(1.0 / static_cast<double>(n));
      const double c_env = params.fitted_envelope_constant.value_or(0.5);
      return RemainderSample::make(x, s.value(), std::log(x) + euler_gamma, c_env / x);
    }
    case HarmonicVariant::ap: {
      if (params.modulus < 1) throw std::domain_error("harmonic_sum: modulus >= 1");
      std::uint64_t start = params.residue % params.modulus;
      if (start == 0) start = params.modulus;
      for (std::uint64_t n = start; n <= xi; n += params.modulus) {
        s.add(1.0 / static_cast<double>(n));
      }
      // main term slope: empirically (1/q) log x; gamma_{a,q} fitted
      const double c = params.fitted_constant.value_or(0.0);
      const double c_env = params.fitted_envelope_constant.value_or(1.0);
      return RemainderSample::make(
          x, s.value(), std::log(x) / static_cast<double>(params.modulus) + c,
          c_env / x);
    }
    case HarmonicVariant::coprime: {
      for (std::uint64_t n = 1; n <= xi; ++n) {
        bool coprime = true;
        for (std::uint64_t p : params.coprime_primes) {
          if (n % p == 0) {
            coprime = false;
            break;
          }
        }
        if (coprime) s.add(1.0 / static_cast<double>(n));
      }
      // main (phi(N)/N) log x, o(.) envelope reported via fitted constant
      const double c = params.fitted_constant.value_or(0.0);
      const double c_env = params.fitted_envelope_constant.value_or(1.0);
      return RemainderSample::make(x, s.value(),
                                   params.phi_over_n * std::log(x) + c, c_env);
    }
    case HarmonicVariant::squarefree: {
      std::vector<bool> not_sqfree(xi + 1, false);
      for (std::uint64_t d = 2; d * d <= xi; ++d) {
        for (std::uint64_t m = d * d; m <= xi; m += d * d) not_sqfree[m] = true;
      }
      for (std::uint64_t n = 1; n <= xi; ++n) {
        if (!not_sqfree[n]) s.add(1.0 / static_cast<double>(n));
      }
      const double c = params.fitted_constant.value_or(0.0);
      const double c_env = params.fitted_envelope_constant.value_or(1.0);
      return RemainderSample::make(x, s.value(),
                                   six_over_pi_sq * std::log(x) + c,
                                   c_env / std::sqrt(x));
    }
    case HarmonicVariant::log_power: {
      const unsigned k = params.log_exponent;
      for (std::uint64_t n = 2; n <= xi; ++n) {
        const double ln = std::log(static_cast<double>(n));
        s.add(std::pow(ln, static_cast<double>(k)) / static_cast<double>(n));
      }
      const double c = params.fitted_constant.value_or(0.0);
      const double c_env = params.fitted_envelope_constant.value_or(1.0);
      const double main = std::pow(std::log(x), k + 1.0) / (k + 1.0) + c;
      return RemainderSample::make(x, s.value(), main,
                                   c_env * std::pow(std::log(x), k) / x);
    }
    case HarmonicVariant::inverse_log: {
      for (std::uint64_t n = 2; n <= xi; ++n) {
        const double nd = static_cast<double>(n);
        s.add(1.0 / (nd * std::log(nd)));
      }
      const double c = params.fitted_constant.value_or(0.0);
      const double c_env = params.fitted_envelope_constant.value_or(1.0);
      return RemainderSample::make(x, s.value(), std::log(std::log(x)) + c,
                                   c_env / (x * std::log(x)));
    }
  }
  throw std::logic_error("harmonic_sum: unreachable");
}

// Fits the additive constant of a harmonic variant over a log-spaced grid and
// returns samples re-evaluated with the fit. One pass per grid point (the
// variants are O(x) each; grids stay modest).
struct FittedGrid {
  std::vector<RemainderSample> samples;
  ConstantFit constant;
  ConstantFit envelope_constant;
};

inline FittedGrid harmonic_grid(const std::vector<double>& xs,
                                HarmonicVariant variant,
                                HarmonicParams params = {}) {
  std::vector<double> emp, main0;
  emp.reserve(xs.size());
  for (double x : xs) {
    HarmonicParams raw = params;
    raw.fitted_constant = 0.0;
    RemainderSample s = harmonic_sum(x, variant, raw);
    emp.push_back(s.empirical);
    main0.push_back(s.main_term);
  }
  FittedGrid out;
  const bool has_printed_constant = variant == HarmonicVariant::plain;
  if (!has_printed_constant) {
    out.constant = fit_additive_constant(emp, main0);
  }
  params.fitted_constant = out.constant.value;
  // envelope constant: scale the variant's O-shape to the worst residual
  double worst_scaled = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    HarmonicParams p2 = params;
    p2.fitted_envelope_constant = 1.0;
    RemainderSample s = harmonic_sum(xs[i], variant, p2);
    if (s.envelope > 0) {
      worst_scaled = std::max(worst_scaled, std::abs(s.residual) / s.envelope);
    }
  }
  out.envelope_constant.value = worst_scaled;
  params.fitted_envelope_constant = worst_scaled;
  for (double x : xs) out.samples.push_back(harmonic_sum(x, variant, params));
  return out;
}

// ---------------------------------------------------------------------------
// Constants
// ---------------------------------------------------------------------------

inline double fit_ap_prime_constant(const PrimeSums& sums, std::uint64_t a,
                                    std::uint64_t q,
                                    const std::vector<double>& xs) {
  std::vector<double> emp, main0;
  const double phi_q = euler_phi_u64(q);
  for (double x : xs) {
    KahanSum<double> s;
    for (std::uint64_t p : sums.table().primes()) {
      if (static_cast<double>(p) > x) break;
      if (p % q == a % q) s.add(1.0 / static_cast<double>(p));
    }
    emp.push_back(s.value());
    main0.push_back(std::log(std::log(x)) / phi_q);
  }
  return fit_additive_constant(emp, main0).value;
}

inline double fit_ap_harmonic_constant(std::uint64_t a, std::uint64_t q,
                                       const std::vector<double>& xs) {
  std::vector<double> emp, main0;
  for (double x : xs) {
    HarmonicParams p;
    p.residue = a;
    p.modulus = q;
    p.fitted_constant = 0.0;
    RemainderSample s = harmonic_sum(x, HarmonicVariant::ap, p);
    emp.push_back(s.empirical);
    main0.push_back(s.main_term);
  }
  return fit_additive_constant(emp, main0).value;
}

// B, A_+/-, gamma against references; B from the prime product series with an
// integral-estimate tail correction (sum_{p>L} of the inner tails is about
// 1/(2 L log L) by PNT).
inline std::vector<ConstantEstimate> estimate_constants(
    const PrimeSums& sums, std::uint64_t ap_a = 1, std::uint64_t ap_q = 4) {
  if (sums.table().limit() < 100000) {
    throw std::domain_error("estimate_constants: table limit must be >= 1e5");
  }
  std::vector<ConstantEstimate> out;

  ConstantEstimate g;
  g.name = "gamma";
  g.value = euler_gamma;
  g.reference = euler_gamma;
  g.has_reference = true;
  g.abs_error = 0;
  g.note = "reference decimal";
  out.push_back(g);

  const double L = static_cast<double>(sums.table().limit());
  const double tail_correction = 1.0 / (2.0 * L * std::log(L));

  ConstantEstimate b;
  b.name = "B";
  b.value = euler_gamma - sums.inner_tail_all() - tail_correction;
  b.reference = mertens_B;
  b.has_reference = true;
  b.abs_error = std::abs(b.value - b.reference);
  b.note = "gamma + sum(log(1-1/p) + 1/p) with PNT tail estimate";
  out.push_back(b);

  KahanSum<double> sm, sp;
  for (std::uint64_t p : sums.table().primes()) {
    const double pd = static_cast<double>(p);
    sm.add(1.0 / (pd * (pd - 1.0)));
    sp.add(1.0 / (pd * (pd + 1.0)));
  }
  ConstantEstimate am;
  am.name = "A_minus";
  am.value = mertens_B + sm.value() + 1.0 / (L * std::log(L));
  am.note = "B + sum 1/(p(p-1)), PNT tail estimate";
  out.push_back(am);

  ConstantEstimate apl;
  apl.name = "A_plus";
  apl.value = mertens_B - sp.value() - 1.0 / (L * std::log(L));
  apl.note = "B - sum 1/(p(p+1)), PNT tail estimate (sign pairing corrected)";
  out.push_back(apl);

  auto xs = log_spaced(1000.0, L, 24);
  ConstantEstimate baq;
  baq.name = "B_aq";
  baq.value = fit_ap_prime_constant(sums, ap_a, ap_q, xs);
  baq.note = "fitted, a=" + std::to_string(ap_a) + " q=" + std::to_string(ap_q);
  out.push_back(baq);

  ConstantEstimate gaq;
  gaq.name = "gamma_aq";
  gaq.value = fit_ap_harmonic_constant(ap_a, ap_q, log_spaced(1000.0, 1e6, 16));
  gaq.note = "fitted, a=" + std::to_string(ap_a) + " q=" + std::to_string(ap_q);
  out.push_back(gaq);

  return out;
}

// Elementary bound: sum_{p<=x} 1/p <= loglog x - loglog 2 + 1/(2 log 2).
inline CriterionReport elementary_bound_check(const PrimeSums& sums, double x) {
  if (x < 3) throw std::domain_error("elementary_bound_check: x >= 3");
  if (x > static_cast<double>(sums.table().limit())) {
    throw std::out_of_range("elementary_bound_check: x outside table range");
  }
  CriterionReport r;
  r.n = static_cast<std::uint64_t>(x);
  r.n_descriptor = std::to_string(r.n);
  r.criterion = "elementary_prime_sum_bound";
  const double lhs = sums.inv_p_upto(x);
  const double log2 = std::log(2.0);
  const double rhs = std::log(std::log(x)) - std::log(log2) + 1.0 / (2.0 * log2);
  r.margin = rhs - lhs;
  r.holds = r.margin >= 0;
  r.mode = EvalMode::log_space;
  r.error_bound = 1e-12;
  r.indeterminate = std::abs(r.margin) <= r.error_bound;
  return r;
}

// Truncated log(1+t) bracket: even-length partial sums underestimate, odd
// overestimate (alternating series, 0 < t <= 1). Exact rational in t.
inline Ratio log1p_truncation(const Ratio& t, unsigned terms) {
  Ratio sum = 0;
  Ratio power = 1;
  for (unsigned n = 1; n <= terms; ++n) {
    power *= t;
    Ratio term = power / Ratio(static_cast<long>(n));
    if (n % 2 == 0) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return sum;
}

}  // namespace abl
