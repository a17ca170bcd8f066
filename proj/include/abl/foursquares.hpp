#pragma once

// Four-square representation counts: the closed form r4(N) = 8 sigma(N) for
// odd N and 24 sigma(M) for N = 2^a M, against a lattice-enumeration oracle
// built from the two-square convolution r4 = sum_k r2(k) r2(n-k).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "abl/arith.hpp"
#include "abl/constants.hpp"
#include "abl/factored.hpp"
#include "abl/report.hpp"
#include "abl/sieve.hpp"

namespace abl {

struct R4Result {
  BigInt n;
  BigInt r4;
  bool even_branch = false;  // n = 2^a M with a > 0
  BigInt m_odd_part;
};

inline R4Result r4_jacobi(const FactoredInteger& f) {
  R4Result r;
  r.n = f.value();
  const unsigned a = f.nu2();
  std::vector<PrimePower> odd;
  for (const auto& pp : f.factors()) {
    if (pp.prime != 2) odd.push_back(pp);
  }
  FactoredInteger m = FactoredInteger::from_factors(std::move(odd));
  r.m_odd_part = m.value();
  if (a == 0) {
    r.r4 = 8 * sigma(f);
  } else {
    r.even_branch = true;
    r.r4 = 24 * sigma(m);
  }
  return r;
}

// r2 prefix: r2[k] = #{(x,y) in Z^2 : x^2 + y^2 = k} for 0 <= k <= n.
inline std::vector<std::uint64_t> r2_prefix(std::uint64_t n) {
  std::vector<std::uint64_t> r2(n + 1, 0);
  for (std::int64_t x = 0; static_cast<std::uint64_t>(x) * x <= n; ++x) {
    for (std::int64_t y = 0; static_cast<std::uint64_t>(x * x + y * y) <= n; ++y) {
      const std::uint64_t k = static_cast<std::uint64_t>(x * x + y * y);
      // multiplicity over signs: each nonzero coordinate contributes a factor 2
      std::uint64_t mult = 1;
      if (x != 0) mult *= 2;
      if (y != 0) mult *= 2;
      r2[k] += mult;
    }
  }
  return r2;
}

// Ordered signed quadruples with x^2+y^2+z^2+w^2 = n, via the convolution.
inline std::uint64_t r4_bruteforce(std::uint64_t n,
                                   std::uint64_t budget = 100000) {
  if (n > budget) throw std::length_error("r4_bruteforce: n exceeds budget");
  auto r2 = r2_prefix(n);
  std::uint64_t total = 0;
  for (std::uint64_t k = 0; k <= n; ++k) total += r2[k] * r2[n - k];
  return total;
}

// Prefix of r4 for the oracle window; one convolution per n.
inline std::vector<std::uint64_t> r4_bruteforce_prefix(std::uint64_t n_max) {
  auto r2 = r2_prefix(n_max);
  std::vector<std::uint64_t> r4(n_max + 1, 0);
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    std::uint64_t total = 0;
    for (std::uint64_t k = 0; k <= n; ++k) total += r2[k] * r2[n - k];
    r4[n] = total;
  }
  return r4;
}

// Literal four-nested-loop counts for every n <= n_max at once; validates the
// convolution on a small window.
inline std::vector<std::uint64_t> r4_four_loop_prefix(std::uint64_t n_max) {
  std::vector<std::uint64_t> cnt(n_max + 1, 0);
  const std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n_max))) + 1;
  for (std::int64_t x = -r; x <= r; ++x) {
    for (std::int64_t y = -r; y <= r; ++y) {
      for (std::int64_t z = -r; z <= r; ++z) {
        for (std::int64_t w = -r; w <= r; ++w) {
          const std::int64_t s = x * x + y * y + z * z + w * w;
          if (s >= 0 && static_cast<std::uint64_t>(s) <= n_max) {
            cnt[static_cast<std::uint64_t>(s)]++;
          }
        }
      }
    }
  }
  return cnt;
}

// Lattice points of Z^4 inside the closed ball of radius sqrt(x); equals
// 1 + sum_{1<=n<=x} r4(n).
inline std::uint64_t ball4_count(std::uint64_t x) {
  std::uint64_t total = 0;
  const std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x))) + 1;
  for (std::int64_t a = -r; a <= r; ++a) {
    for (std::int64_t b = -r; b <= r; ++b) {
      const std::int64_t ab = a * a + b * b;
      if (static_cast<std::uint64_t>(ab) > x) continue;
      for (std::int64_t c = -r; c <= r; ++c) {
        const std::int64_t abc = ab + c * c;
        if (static_cast<std::uint64_t>(abc) > x) continue;
        // count d with d^2 <= x - abc
        const std::uint64_t rem = x - static_cast<std::uint64_t>(abc);
        std::uint64_t d = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(rem)));
        while (d * d > rem) --d;
        while ((d + 1) * (d + 1) <= rem) ++d;
        total += 2 * d + 1;
      }
    }
  }
  return total;
}

// Bound check from the criterion r4(N) < 4 e^gamma N loglog N (odd) or
// 24 e^gamma M loglog M (even, M the odd part). The threshold claim has
// exceptions (17 is one); scans report the empirical exception set.
inline CriterionReport r4_bound_check(const FactoredInteger& f) {
  CriterionReport r;
  r.criterion = "r4_bound";
  r.n_descriptor = f.to_string();
  std::uint64_t nv = 0;
  if (f.value_u64(nv)) r.n = nv;
  R4Result j = r4_jacobi(f);
  const double r4 = mpz_get_d(j.r4.get_mpz_t());
  double bound;
  if (!j.even_branch) {
    const double n = mpz_get_d(j.n.get_mpz_t());
    if (n <= 15) throw std::domain_error("r4_bound_check: N > 15 required");
    bound = 4.0 * exp_gamma * n * std::log(std::log(n));
  } else {
    const double m = mpz_get_d(j.m_odd_part.get_mpz_t());
    if (m < 3) {
      throw std::domain_error("r4_bound_check: even branch needs odd part >= 3");
    }
    bound = 24.0 * exp_gamma * m * std::log(std::log(m));
  }
  r.margin = bound - r4;
  r.holds = r.margin > 0;
  r.mode = EvalMode::log_space;
  r.error_bound = 1e-12 * bound;
  r.indeterminate = std::abs(r.margin) <= r.error_bound;
  return r;
}

struct R4ExceptionScan {
  std::vector<std::uint64_t> exceptions;
  std::uint64_t max_exception = 0;
  std::uint64_t checked = 0;
};

// Exception set of the odd-branch bound over odd n in [17, limit]:
// 8 sigma(n) >= 4 e^gamma n loglog n.
inline R4ExceptionScan r4_exception_scan(const PrimeTable& table,
                                         std::uint64_t limit,
                                         unsigned threads = 1) {
  auto blocks = parallel_block_map<R4ExceptionScan>(
      17, limit + 1,
      [&](std::uint64_t lo, std::uint64_t hi) {
        R4ExceptionScan r;
        factor_scan(table, lo, hi, [&](const NValues& v) {
          if (v.n % 2 == 0) return;
          r.checked++;
          const double nd = static_cast<double>(v.n);
          const double bound = 4.0 * exp_gamma * nd * std::log(std::log(nd));
          if (8.0 * static_cast<double>(v.sigma) >= bound) {
            r.exceptions.push_back(v.n);
          }
        });
        return r;
      },
      threads);
  R4ExceptionScan out;
  for (const auto& b : blocks) {
    out.checked += b.checked;
    out.exceptions.insert(out.exceptions.end(), b.exceptions.begin(), b.exceptions.end());
  }
  if (!out.exceptions.empty()) out.max_exception = out.exceptions.back();
  return out;
}

}  // namespace abl
