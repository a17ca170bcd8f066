#pragma once

// Prime table with cumulative log sums: the backbone of every scan. The
// table is immutable after construction and safe to share across threads.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "abl/kahan.hpp"

namespace abl {

struct NthPrimeResult {
  std::uint64_t value = 0;
  // n log n <= p_n <= n(log n + loglog n): the weak window. Not applicable
  // at n = 1 (loglog undefined); reported false where the upper form fails
  // (it does for n = 2..5).
  bool window_holds = false;
  bool window_applicable = false;
  // Diagnostic: p_n <= n(log n + loglog n - 1). This is the classical lower
  // estimate misprinted as an upper bound; expected false for all n >= 2.
  bool minus_one_upper_holds = false;
  double lower_bound = 0;
  double upper_bound = 0;
};

class PrimeTable {
 public:
  std::uint64_t limit() const { return limit_; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  std::size_t count() const { return primes_.size(); }

  // cum_log[k-1] = sum_{i<=k} log p_i = theta(p_k) = log(primorial N_k).
  const std::vector<double>& cum_log() const { return cum_log_; }

  // pi(x): number of primes <= x.
  std::size_t pi(double x) const {
    if (x < 2) return 0;
    auto it = std::upper_bound(primes_.begin(), primes_.end(),
                               static_cast<std::uint64_t>(x));
    return static_cast<std::size_t>(it - primes_.begin());
  }

  std::uint64_t nth(std::size_t n) const {  // 1-based
    if (n < 1 || n > primes_.size()) {
      throw std::out_of_range("nth_prime: n out of table range");
    }
    return primes_[n - 1];
  }

  friend PrimeTable build_table(std::uint64_t limit, std::uint64_t memory_budget_bytes);

 private:
  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> primes_;
  std::vector<double> cum_log_;
};

namespace detail {

inline void append_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

inline bool read_varint(const std::string& in, std::size_t& pos, std::uint64_t& v) {
  v = 0;
  int shift = 0;
  while (pos < in.size() && shift < 64) {
    std::uint8_t b = static_cast<std::uint8_t>(in[pos++]);
    v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
    if (!(b & 0x80)) return true;
    shift += 7;
  }
  return false;
}

inline void put_u64_le(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline std::uint64_t get_u64_le(const std::string& in, std::size_t pos) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(in[pos + i])) << (8 * i);
  }
  return v;
}

inline std::filesystem::path cache_path(std::uint64_t limit) {
  const char* dir = std::getenv("ABUNDANCY_CACHE_DIR");
  if (!dir || !*dir) return {};
  return std::filesystem::path(dir) / ("primes-" + std::to_string(limit) + ".abl");
}

// Cache layout: "ABL1", limit (8-byte LE), count (8-byte LE), then deltas
// between consecutive primes as unsigned varints (first delta from 0).
inline bool load_cache(std::uint64_t limit, std::vector<std::uint64_t>& primes) {
  auto path = cache_path(limit);
  if (path.empty()) return false;
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (data.size() < 20 || data.compare(0, 4, "ABL1") != 0) return false;
  if (get_u64_le(data, 4) != limit) return false;
  std::uint64_t count = get_u64_le(data, 12);
  std::size_t pos = 20;
  std::uint64_t prev = 0;
  primes.clear();
  primes.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t delta;
    if (!read_varint(data, pos, delta)) return false;
    prev += delta;
    primes.push_back(prev);
  }
  if (pos != data.size()) return false;
  if (primes.empty() || primes.front() != 2 || primes.back() > limit) return false;
  return true;
}

inline void store_cache(std::uint64_t limit, const std::vector<std::uint64_t>& primes) {
  auto path = cache_path(limit);
  if (path.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  std::string data = "ABL1";
  put_u64_le(data, limit);
  put_u64_le(data, primes.size());
  std::uint64_t prev = 0;
  for (std::uint64_t p : primes) {
    append_varint(data, p - prev);
    prev = p;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (out) out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

}  // namespace detail

// Sieve of Eratosthenes over odd numbers. Deterministic; reuses the on-disk
// cache when ABUNDANCY_CACHE_DIR is set.
inline PrimeTable build_table(std::uint64_t limit,
                              std::uint64_t memory_budget_bytes = std::uint64_t(8) << 30) {
  if (limit < 2) throw std::domain_error("build_table: limit must be >= 2");
  if (limit / 2 + 64 > memory_budget_bytes * 8) {
    throw std::length_error("build_table: limit exceeds memory budget");
  }
  PrimeTable t;
  t.limit_ = limit;
  if (!detail::load_cache(limit, t.primes_)) {
    const std::uint64_t half = limit / 2;  // composite[i] marks 2i+1
    std::vector<bool> composite(half + 1, false);
    for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= limit; ++i) {
      if (composite[i]) continue;
      const std::uint64_t p = 2 * i + 1;
      for (std::uint64_t j = (p * p) / 2; j <= half; j += p) composite[j] = true;
    }
    t.primes_.push_back(2);
    for (std::uint64_t i = 1; 2 * i + 1 <= limit; ++i) {
      if (!composite[i]) t.primes_.push_back(2 * i + 1);
    }
    detail::store_cache(limit, t.primes_);
  }
  t.cum_log_.reserve(t.primes_.size());
  KahanSum<double> acc;
  for (std::uint64_t p : t.primes_) {
    acc.add(std::log(static_cast<double>(p)));
    t.cum_log_.push_back(acc.value());
  }
  return t;
}

inline NthPrimeResult nth_prime(const PrimeTable& table, std::size_t n) {
  NthPrimeResult r;
  r.value = table.nth(n);
  if (n >= 2) {
    const double nd = static_cast<double>(n);
    const double ln = std::log(nd);
    const double lln = std::log(ln);
    r.lower_bound = nd * ln;
    r.upper_bound = nd * (ln + lln);
    r.window_applicable = true;
    const double p = static_cast<double>(r.value);
    r.window_holds = r.lower_bound <= p && p <= r.upper_bound;
    r.minus_one_upper_holds = p <= nd * (ln + lln - 1.0);
  }
  return r;
}

enum class ChebyshevKind { theta, psi };

// theta(x) = sum_{p<=x} log p; psi(x) additionally counts each proper prime
// power p^a <= x once more. Powers are found by integer multiplication, never
// floating logs, so exact powers land on the correct side.
inline double chebyshev(const PrimeTable& table, double x, ChebyshevKind kind) {
  if (x < 0 || x > static_cast<double>(table.limit())) {
    throw std::out_of_range("chebyshev: x outside table range");
  }
  const std::uint64_t xi = static_cast<std::uint64_t>(x);
  const std::size_t k = table.pi(x);
  double theta = k == 0 ? 0.0 : table.cum_log()[k - 1];
  if (kind == ChebyshevKind::theta) return theta;
  KahanSum<double> extra;
  for (std::uint64_t p : table.primes()) {
    if (p * p > xi) break;
    const double lp = std::log(static_cast<double>(p));
    std::uint64_t pw = p * p;
    while (true) {
      extra.add(lp);
      if (pw > xi / p) break;  // next power would exceed x (overflow-safe)
      pw *= p;
    }
  }
  return theta + extra.value();
}

// log N_k = theta(p_k) for N_k the k-th primorial; k is 1-based.
inline double log_primorial(const PrimeTable& table, std::size_t k) {
  if (k < 1 || k > table.count()) {
    throw std::out_of_range("log_primorial: k out of range");
  }
  return table.cum_log()[k - 1];
}

}  // namespace abl
