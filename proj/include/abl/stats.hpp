#pragma once

// Distributional and average-order experiments: the omega normality
// histogram with a Kolmogorov-Smirnov distance, exact average orders with
// dual-reading main terms, binomial-row averages, limsup tracking, and the
// density search for sigma(N)/(e^gamma N loglog N).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "abl/arith.hpp"
#include "abl/constants.hpp"
#include "abl/kahan.hpp"
#include "abl/rational.hpp"
#include "abl/sieve.hpp"

namespace abl {

// Standard normal CDF via an erf series: Taylor expansion around 0 for small
// |z|, complementary continued-fraction-free asymptotic tail beyond. Accuracy
// target 1e-10, checked against the libm erf in tests.
inline double normal_cdf(double z) {
  const double x = z / std::numbers::sqrt2;
  const double ax = std::abs(x);
  double erf_abs;
  if (ax < 3.5) {
    // erf(x) = 2/sqrt(pi) * sum_{k>=0} (-1)^k x^{2k+1} / (k! (2k+1))
    double term = ax;
    KahanSum<double> s;
    s.add(ax);
    for (int k = 1; k < 120; ++k) {
      term *= -ax * ax / k;
      const double add = term / (2 * k + 1);
      s.add(add);
      if (std::abs(add) < 1e-18) break;
    }
    erf_abs = 2.0 / std::sqrt(std::numbers::pi) * s.value();
  } else {
    // erfc(x) ~ exp(-x^2)/(x sqrt(pi)) * sum (-1)^k (2k-1)!!/(2x^2)^k
    double sum = 1.0;
    double term = 1.0;
    for (int k = 1; k < 30; ++k) {
      const double next = term * (2 * k - 1) / (2 * ax * ax);
      if (next > term) break;  // asymptotic series: stop at smallest term
      term = next;
      sum += (k % 2 ? -1.0 : 1.0) * term;
    }
    const double erfc = std::exp(-ax * ax) / (ax * std::sqrt(std::numbers::pi)) * sum;
    erf_abs = 1.0 - erfc;
  }
  const double erf = x < 0 ? -erf_abs : erf_abs;
  return 0.5 * (1.0 + erf);
}

struct Histogram {
  std::vector<double> bin_edges;  // size bins + 1, strictly increasing
  std::vector<double> masses;     // size bins, sums to 1
  std::uint64_t sample_count = 0;
};

struct ErdosKacResult {
  Histogram histogram;
  double ks_distance = 0;
};

// omega(n) for 3 <= n <= x, standardized by (omega - loglog n)/sqrt(loglog n).
// KS distance is exact over the sorted sample.
inline ErdosKacResult erdos_kac(const PrimeTable& table, std::uint64_t x,
                                unsigned bins = 40,
                                std::uint64_t memory_budget_values = 200000000) {
  if (x < 100) throw std::domain_error("erdos_kac: x >= 100");
  if (bins < 5) throw std::domain_error("erdos_kac: bins >= 5");
  if (x > memory_budget_values) {
    throw std::length_error("erdos_kac: x exceeds memory budget");
  }
  std::vector<double> z;
  z.reserve(x - 2);
  factor_scan(table, 3, x + 1, [&](const NValues& v) {
    const double ll = std::log(std::log(static_cast<double>(v.n)));
    z.push_back((static_cast<double>(v.omega) - ll) / std::sqrt(ll));
  });
  std::sort(z.begin(), z.end());
  const double n = static_cast<double>(z.size());
  double ks = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double phi = normal_cdf(z[i]);
    ks = std::max(ks, std::abs((static_cast<double>(i) + 1.0) / n - phi));
    ks = std::max(ks, std::abs(static_cast<double>(i) / n - phi));
  }
  ErdosKacResult out;
  out.ks_distance = ks;
  const double lo = z.front();
  const double hi = z.back();
  const double w = (hi - lo) / bins;
  out.histogram.bin_edges.resize(bins + 1);
  for (unsigned b = 0; b <= bins; ++b) out.histogram.bin_edges[b] = lo + w * b;
  out.histogram.bin_edges.back() = hi;
  out.histogram.masses.assign(bins, 0.0);
  for (double v : z) {
    unsigned b = w > 0 ? static_cast<unsigned>((v - lo) / w) : 0;
    if (b >= bins) b = bins - 1;
    out.histogram.masses[b] += 1.0;
  }
  for (double& m : out.histogram.masses) m /= n;
  out.histogram.sample_count = z.size();
  return out;
}

// ---------------------------------------------------------------------------
// Average orders
// ---------------------------------------------------------------------------

enum class AverageOrderFn { sigma0, sigma1, sigma2, sigma3, phi, omega };

struct AverageOrderRow {
  std::uint64_t x = 0;
  BigInt empirical_sum;
  double main_term = 0;
  double fitted_constant = 0;
  double residual = 0;
  // the alternative (printed) main term where two readings circulate
  double alt_main_term = 0;
  double alt_residual = 0;
  std::string main_note;
  std::string alt_note;
};

// Exact sum of sigma_s via the divisor identity sum_{n<=x} sigma_s(n) =
// sum_{d<=x} d^s floor(x/d); phi and omega sums come from the sieve.
inline AverageOrderRow average_order(const PrimeTable& table, std::uint64_t x,
                                     AverageOrderFn fn, unsigned threads = 1) {
  AverageOrderRow row;
  row.x = x;
  const double xd = static_cast<double>(x);
  switch (fn) {
    case AverageOrderFn::sigma0:
    case AverageOrderFn::sigma1:
    case AverageOrderFn::sigma2:
    case AverageOrderFn::sigma3: {
      const unsigned s = fn == AverageOrderFn::sigma0   ? 0u
                         : fn == AverageOrderFn::sigma1 ? 1u
                         : fn == AverageOrderFn::sigma2 ? 2u
                                                        : 3u;
      auto parts = parallel_block_map<BigInt>(
          1, x + 1,
          [&](std::uint64_t lo, std::uint64_t hi) {
            unsigned __int128 acc = 0;
            BigInt overflow = 0;
            for (std::uint64_t d = lo; d < hi; ++d) {
              unsigned __int128 ds = 1;
              for (unsigned i = 0; i < s; ++i) ds *= d;
              unsigned __int128 term = ds * (x / d);
              if (acc + term < acc) {  // guard: spill on wrap
                overflow += to_big(acc);
                acc = 0;
              }
              acc += term;
            }
            return overflow + to_big(acc);
          },
          threads);
      for (const auto& p : parts) row.empirical_sum += p;
      if (s == 0) {
        row.main_term = xd * std::log(xd) + (2 * euler_gamma - 1) * xd;
        row.main_note = "x log x + (2 gamma - 1) x";
      } else {
        double zs1 = s == 1 ? zeta_2 : s == 2 ? zeta_3 : zeta_4;
        row.main_term = zs1 / (s + 1.0) * std::pow(xd, s + 1.0);
        row.main_note = "zeta(s+1)/(s+1) x^{s+1}";
      }
      break;
    }
    case AverageOrderFn::phi: {
      auto parts = parallel_block_map<unsigned __int128>(
          1, x + 1,
          [&](std::uint64_t lo, std::uint64_t hi) {
            unsigned __int128 acc = 0;
            factor_scan(table, lo, hi, [&](const NValues& v) { acc += v.phi; });
            return acc;
          },
          threads);
      for (auto p : parts) row.empirical_sum += to_big(p);
      row.main_term = 3.0 / (std::numbers::pi * std::numbers::pi) * xd * xd;
      row.main_note = "(3/pi^2) x^2 (classical)";
      row.alt_main_term = 6.0 / (std::numbers::pi * std::numbers::pi) * xd * xd;
      row.alt_note = "(6/pi^2) x^2 (printed)";
      break;
    }
    case AverageOrderFn::omega: {
      auto parts = parallel_block_map<std::uint64_t>(
          1, x + 1,
          [&](std::uint64_t lo, std::uint64_t hi) {
            std::uint64_t acc = 0;
            factor_scan(table, lo, hi, [&](const NValues& v) { acc += v.omega; });
            return acc;
          },
          threads);
      std::uint64_t total = 0;
      for (auto p : parts) total += p;
      row.empirical_sum = to_big(total);
      row.main_term = xd * std::log(std::log(xd)) + mertens_B * xd;
      row.main_note = "x loglog x + B x (classical)";
      row.alt_main_term = xd * std::log(xd);  // printed x log x + cx with c = 0
      row.alt_note = "x log x (printed leading term)";
      break;
    }
  }
  const double emp = mpz_get_d(row.empirical_sum.get_mpz_t());
  row.residual = emp - row.main_term;
  if (row.alt_main_term != 0) row.alt_residual = emp - row.alt_main_term;
  return row;
}

// ---------------------------------------------------------------------------
// Binomial rows
// ---------------------------------------------------------------------------

struct BinomialRowAverages {
  unsigned n = 0;
  double sigma_avg = 0;  // (1/(N+1)) sum_k sigma(C(N,k))/C(N,k), exact then rounded
  double phi_avg = 0;
  double log_log_log_n = 0;  // trend axis where defined
};

// Exponent of p in C(n, k) by Kummer/Legendre carries.
inline unsigned binomial_prime_exponent(unsigned n, unsigned k, std::uint64_t p) {
  unsigned e = 0;
  std::uint64_t pj = p;
  while (pj <= n) {
    e += static_cast<unsigned>(n / pj - k / pj - (n - k) / pj);
    pj *= p;
  }
  return e;
}

inline BinomialRowAverages binomial_row_average(const PrimeTable& table, unsigned n) {
  if (n < 1 || n > 2000) throw std::length_error("binomial_row_average: 1 <= N <= 2000");
  if (table.limit() < n) throw std::out_of_range("binomial_row_average: table < N");
  BinomialRowAverages out;
  out.n = n;
  Ratio sig_sum = 0, phi_sum = 0;
  for (unsigned k = 0; k <= n; ++k) {
    Ratio sig_ratio = 1, phi_ratio = 1;
    for (std::uint64_t p : table.primes()) {
      if (p > n) break;
      unsigned e = binomial_prime_exponent(n, k, p);
      if (e == 0) continue;
      BigInt pb = to_big(p);
      BigInt pe = big_pow(pb, e);
      sig_ratio *= make_ratio(pe * pb - 1, pe * (pb - 1));
      phi_ratio *= make_ratio(pb - 1, pb);
    }
    sig_sum += sig_ratio;
    phi_sum += phi_ratio;
  }
  sig_sum /= static_cast<long>(n + 1);
  phi_sum /= static_cast<long>(n + 1);
  out.sigma_avg = mpq_get_d(sig_sum.get_mpq_t());
  out.phi_avg = mpq_get_d(phi_sum.get_mpq_t());
  const double ln = std::log(static_cast<double>(n));
  out.log_log_log_n = ln > 1 && std::log(ln) > 0 ? std::log(std::log(ln)) : 0.0;
  return out;
}

// ---------------------------------------------------------------------------
// Limsup tracking, density search, normal-order fractions
// ---------------------------------------------------------------------------

enum class IntegerClass { all, odd, squarefree };

struct LimsupReport {
  double sup_sigma = 0;  // max sigma(n)/(n loglog n), n >= 16 in class
  std::uint64_t argmax_sigma = 0;
  double sup_phi = 0;  // max n/(phi(n) loglog n)
  std::uint64_t argmax_phi = 0;
  // theoretical limsup constants for the class
  double sigma_limit = 0;
  double phi_limit = 0;
};

inline LimsupReport limsup_tracker(const PrimeTable& table, std::uint64_t x,
                                   IntegerClass cls, unsigned threads = 1) {
  if (x < 100) throw std::domain_error("limsup_tracker: x >= 100");
  auto blocks = parallel_block_map<LimsupReport>(
      16, x + 1,
      [&](std::uint64_t lo, std::uint64_t hi) {
        LimsupReport r;
        factor_scan(table, lo, hi, [&](const NValues& v) {
          if (cls == IntegerClass::odd && v.n % 2 == 0) return;
          if (cls == IntegerClass::squarefree && !v.squarefree) return;
          const double lln = std::log(std::log(static_cast<double>(v.n)));
          const double rs =
              static_cast<double>(v.sigma) / (static_cast<double>(v.n) * lln);
          if (rs > r.sup_sigma) {
            r.sup_sigma = rs;
            r.argmax_sigma = v.n;
          }
          const double rp =
              static_cast<double>(v.n) / (static_cast<double>(v.phi) * lln);
          if (rp > r.sup_phi) {
            r.sup_phi = rp;
            r.argmax_phi = v.n;
          }
        });
        return r;
      },
      threads);
  LimsupReport out;
  for (const auto& r : blocks) {
    if (r.sup_sigma > out.sup_sigma) {
      out.sup_sigma = r.sup_sigma;
      out.argmax_sigma = r.argmax_sigma;
    }
    if (r.sup_phi > out.sup_phi) {
      out.sup_phi = r.sup_phi;
      out.argmax_phi = r.argmax_phi;
    }
  }
  switch (cls) {
    case IntegerClass::all:
      out.sigma_limit = exp_gamma;
      out.phi_limit = exp_gamma;
      break;
    case IntegerClass::odd:
      out.sigma_limit = exp_gamma / 2;
      out.phi_limit = exp_gamma / 2;
      break;
    case IntegerClass::squarefree:
      out.sigma_limit = six_over_pi_sq * exp_gamma;
      out.phi_limit = six_over_pi_sq * exp_gamma;
      break;
  }
  return out;
}

// Smallest n in [16, budget] with |sigma(n)/(e^gamma n loglog n) - target| < tol.
inline std::optional<std::uint64_t> density_search(const PrimeTable& table,
                                                   double target, double tol,
                                                   std::uint64_t budget) {
  if (!(target > 0 && target < 1)) throw std::domain_error("density_search: target in (0,1)");
  if (!(tol > 0)) throw std::domain_error("density_search: tol > 0");
  std::optional<std::uint64_t> found;
  factor_scan(table, 16, budget + 1, [&](const NValues& v) {
    if (found) return;
    const double ratio =
        static_cast<double>(v.sigma) /
        (exp_gamma * static_cast<double>(v.n) *
         std::log(std::log(static_cast<double>(v.n))));
    if (std::abs(ratio - target) < tol) found = v.n;
  });
  return found;
}

struct NormalOrderFractions {
  double sigma_fraction = 0;  // sigma(n)/n within [1/band, band] e^g logloglog n
  double phi_fraction = 0;    // n/phi(n) within the same window
  std::uint64_t counted = 0;
};

inline NormalOrderFractions normal_order_fraction(const PrimeTable& table,
                                                  std::uint64_t x, double band,
                                                  unsigned threads = 1) {
  if (x < 10000) throw std::domain_error("normal_order_fraction: x >= 1e4");
  if (!(band > 1)) throw std::domain_error("normal_order_fraction: band > 1");
  struct Acc {
    std::uint64_t in_sigma = 0, in_phi = 0, total = 0;
  };
  auto blocks = parallel_block_map<Acc>(
      16, x + 1,
      [&](std::uint64_t lo, std::uint64_t hi) {
        Acc a;
        factor_scan(table, lo, hi, [&](const NValues& v) {
          const double ll = std::log(std::log(static_cast<double>(v.n)));
          if (ll <= 0) return;
          const double lll = std::log(ll);
          if (lll <= 0) return;  // logloglog undefined/nonpositive below e^e
          a.total++;
          const double center = exp_gamma * lll;
          const double rs = static_cast<double>(v.sigma) / static_cast<double>(v.n);
          if (rs >= center / band && rs <= center * band) a.in_sigma++;
          const double rp = static_cast<double>(v.n) / static_cast<double>(v.phi);
          if (rp >= center / band && rp <= center * band) a.in_phi++;
        });
        return a;
      },
      threads);
  NormalOrderFractions out;
  std::uint64_t in_s = 0, in_p = 0, total = 0;
  for (const auto& a : blocks) {
    in_s += a.in_sigma;
    in_p += a.in_phi;
    total += a.total;
  }
  out.counted = total;
  if (total) {
    out.sigma_fraction = static_cast<double>(in_s) / static_cast<double>(total);
    out.phi_fraction = static_cast<double>(in_p) / static_cast<double>(total);
  }
  return out;
}

}  // namespace abl
