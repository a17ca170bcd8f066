#pragma once

// Segmented factorization sieve: walks [lo, hi) in blocks, extracting full
// prime powers with the table's primes up to sqrt(hi), and hands each n's
// multiplicative data to a visitor in increasing-n order. Everything a range
// scan needs (sigma, phi, omega, mu, 2-adic valuation, largest prime factor,
// optionally sigma_2/sigma_3) comes out of one pass.

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "abl/primes.hpp"

namespace abl {

struct NValues {
  std::uint64_t n = 0;
  std::uint64_t sigma = 1;
  std::uint64_t sigma0 = 1;
  std::uint64_t phi = 1;
  std::uint64_t largest_prime = 1;  // P(n); 1 for n = 1
  unsigned __int128 sigma2 = 1;     // populated only when requested
  unsigned __int128 sigma3 = 1;
  std::uint8_t omega = 0;
  std::uint8_t nu2 = 0;
  std::int8_t mu = 1;  // 0 when not squarefree
  bool squarefree = true;
};

inline constexpr std::uint64_t kDefaultBlock = 1 << 18;

// Serial pass over [lo, hi); visitor(const NValues&) called for each n in
// increasing order. When WithPowers is set, sigma2/sigma3 are filled too.
template <bool WithPowers = false, typename Visitor>
void factor_scan(const PrimeTable& table, std::uint64_t lo, std::uint64_t hi,
                 Visitor&& visit, std::uint64_t block_size = kDefaultBlock) {
  if (lo < 1) throw std::domain_error("factor_scan: lo must be >= 1");
  if (hi <= lo) return;
  {
    std::uint64_t root = 1;
    while ((root + 1) * (root + 1) <= hi - 1) ++root;
    if (root > table.limit()) {
      throw std::out_of_range("factor_scan: table too small for range");
    }
  }

  std::vector<std::uint64_t> cof(block_size), sig(block_size), s0(block_size),
      ph(block_size), pl(block_size);
  std::vector<unsigned __int128> s2, s3;
  if constexpr (WithPowers) {
    s2.resize(block_size);
    s3.resize(block_size);
  }
  std::vector<std::uint8_t> om(block_size), n2(block_size);
  std::vector<std::int8_t> sq(block_size);

  for (std::uint64_t blo = lo; blo < hi; blo += block_size) {
    const std::uint64_t bhi = std::min(hi, blo + block_size);
    const std::uint64_t len = bhi - blo;
    for (std::uint64_t i = 0; i < len; ++i) {
      cof[i] = blo + i;
      sig[i] = 1;
      s0[i] = 1;
      ph[i] = 1;
      pl[i] = 1;
      om[i] = 0;
      n2[i] = 0;
      sq[i] = 1;
      if constexpr (WithPowers) {
        s2[i] = 1;
        s3[i] = 1;
      }
    }
    for (std::uint64_t p : table.primes()) {
      if (p * p >= bhi) break;
      std::uint64_t start = ((blo + p - 1) / p) * p;
      if (start < p) start = p;
      for (std::uint64_t m = start; m < bhi; m += p) {
        const std::uint64_t i = m - blo;
        unsigned e = 0;
        std::uint64_t pe = 1;
        while (cof[i] % p == 0) {
          cof[i] /= p;
          ++e;
          pe *= p;
        }
        if (e == 0) continue;
        sig[i] *= (pe * p - 1) / (p - 1);
        s0[i] *= e + 1;
        ph[i] *= pe / p * (p - 1);
        pl[i] = p;
        om[i] += 1;
        if (p == 2) n2[i] = static_cast<std::uint8_t>(e);
        if (e > 1) sq[i] = 0;
        if constexpr (WithPowers) {
          unsigned __int128 p2 = static_cast<unsigned __int128>(p) * p;
          unsigned __int128 pw = p2;
          unsigned __int128 acc = 1;
          for (unsigned j = 0; j < e; ++j) {
            acc += pw;
            pw *= p2;
          }
          s2[i] *= acc;
          unsigned __int128 p3 = p2 * p;
          pw = p3;
          acc = 1;
          for (unsigned j = 0; j < e; ++j) {
            acc += pw;
            pw *= p3;
          }
          s3[i] *= acc;
        }
      }
    }
    NValues v;
    for (std::uint64_t i = 0; i < len; ++i) {
      v.n = blo + i;
      v.sigma = sig[i];
      v.sigma0 = s0[i];
      v.phi = ph[i];
      v.largest_prime = pl[i];
      v.omega = om[i];
      v.nu2 = n2[i];
      v.squarefree = sq[i] != 0;
      if constexpr (WithPowers) {
        v.sigma2 = s2[i];
        v.sigma3 = s3[i];
      }
      if (cof[i] > 1) {
        const std::uint64_t q = cof[i];
        v.sigma *= q + 1;
        v.sigma0 *= 2;
        v.phi *= q - 1;
        v.largest_prime = q;
        v.omega += 1;
        if constexpr (WithPowers) {
          v.sigma2 *= static_cast<unsigned __int128>(q) * q + 1;
          v.sigma3 *= static_cast<unsigned __int128>(q) * q * q + 1;
        }
      }
      v.mu = v.squarefree ? (v.omega % 2 == 0 ? 1 : -1) : 0;
      visit(v);
    }
  }
}

// Deterministic parallel block map: fn(block_lo, block_hi) -> R evaluated
// concurrently, results returned in block order. Block boundaries depend only
// on block_size, so output is identical for any thread count.
template <typename R, typename MapFn>
std::vector<R> parallel_block_map(std::uint64_t lo, std::uint64_t hi,
                                  MapFn&& fn, unsigned threads = 1,
                                  std::uint64_t block_size = kDefaultBlock) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> blocks;
  for (std::uint64_t b = lo; b < hi; b += block_size) {
    blocks.emplace_back(b, std::min(hi, b + block_size));
  }
  std::vector<R> results(blocks.size());
  if (threads <= 1 || blocks.size() <= 1) {
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      results[i] = fn(blocks[i].first, blocks[i].second);
    }
    return results;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= blocks.size()) break;
      results[i] = fn(blocks[i].first, blocks[i].second);
    }
  };
  std::vector<std::thread> pool;
  const unsigned nthreads = std::min<unsigned>(threads, static_cast<unsigned>(blocks.size()));
  pool.reserve(nthreads);
  for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return results;
}

}  // namespace abl
