#pragma once

// An integer as a sorted (prime, exponent) sequence. The empty sequence is
// N = 1. Primes within 64-bit range are certified by deterministic
// Miller-Rabin; larger claimed primes are accepted but flagged "trusted".

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "abl/primes.hpp"
#include "abl/rational.hpp"

namespace abl {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for the full 64-bit range (the standard 12-base
// witness set).
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while (!(d & 1)) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

struct PrimePower {
  BigInt prime;
  unsigned exponent = 1;
};

class FactoredInteger {
 public:
  FactoredInteger() = default;  // N = 1

  static FactoredInteger from_factors(std::vector<PrimePower> factors) {
    FactoredInteger f;
    f.factors_ = std::move(factors);
    f.validate();
    return f;
  }

  static FactoredInteger from_u64_factors(
      const std::vector<std::pair<std::uint64_t, unsigned>>& pe) {
    std::vector<PrimePower> fs;
    fs.reserve(pe.size());
    for (auto [p, e] : pe) fs.push_back({to_big(p), e});
    return from_factors(std::move(fs));
  }

  const std::vector<PrimePower>& factors() const { return factors_; }
  bool trusted_primes() const { return trusted_; }

  bool is_one() const { return factors_.empty(); }

  unsigned omega() const { return static_cast<unsigned>(factors_.size()); }

  bool squarefree() const {
    for (const auto& f : factors_) {
      if (f.exponent > 1) return false;
    }
    return true;
  }

  bool s_free(unsigned s) const {  // all exponents < s
    for (const auto& f : factors_) {
      if (f.exponent >= s) return false;
    }
    return true;
  }

  unsigned nu2() const {  // 2-adic valuation
    for (const auto& f : factors_) {
      if (f.prime == 2) return f.exponent;
    }
    return 0;
  }

  BigInt largest_prime() const {  // P(N); P(1) = 1 by convention
    if (factors_.empty()) return 1;
    return factors_.back().prime;
  }

  BigInt value() const {
    BigInt v = 1;
    for (const auto& f : factors_) v *= big_pow(f.prime, f.exponent);
    return v;
  }

  // fits in uint64? returns value via out parameter.
  bool value_u64(std::uint64_t& out) const {
    BigInt v = value();
    if (mpz_sizeinbase(v.get_mpz_t(), 2) > 64) return false;
    out = 0;
    mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, v.get_mpz_t());
    return true;
  }

  double log_value() const {
    KahanSum<double> s;
    for (const auto& f : factors_) {
      s.add(f.exponent * std::log(mpz_get_d(f.prime.get_mpz_t())));
    }
    return s.value();
  }

  // Text form: "p1^e1 * p2^e2 * ..." with "^1" elided; "1" for N = 1.
  std::string to_string() const {
    if (factors_.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) os << " * ";
      os << factors_[i].prime.get_str();
      if (factors_[i].exponent != 1) os << '^' << factors_[i].exponent;
    }
    return os.str();
  }

  static FactoredInteger parse(std::string_view text);

 private:
  void validate() {
    BigInt prev = 1;
    for (const auto& f : factors_) {
      if (f.exponent < 1) throw std::invalid_argument("FactoredInteger: exponent must be >= 1");
      if (f.prime <= prev) {
        throw std::invalid_argument("FactoredInteger: primes must be strictly increasing");
      }
      prev = f.prime;
      if (f.prime.fits_ulong_p() ||
          mpz_sizeinbase(f.prime.get_mpz_t(), 2) <= 64) {
        std::uint64_t p = 0;
        mpz_export(&p, nullptr, 1, sizeof(p), 0, 0, f.prime.get_mpz_t());
        if (!is_prime_u64(p)) {
          throw std::invalid_argument("FactoredInteger: " + f.prime.get_str() +
                                      " is not prime");
        }
      } else {
        trusted_ = true;  // beyond certification range
      }
    }
  }

  std::vector<PrimePower> factors_;
  bool trusted_ = false;
};

inline FactoredInteger FactoredInteger::parse(std::string_view text) {
  std::vector<PrimePower> fs;
  std::string s(text);
  std::istringstream is(s);
  std::string tok;
  bool expect_star = false;
  while (is >> tok) {
    if (expect_star) {
      if (tok != "*") throw std::invalid_argument("FactoredInteger::parse: expected '*'");
      expect_star = false;
      continue;
    }
    auto caret = tok.find('^');
    PrimePower pp;
    std::string base = caret == std::string::npos ? tok : tok.substr(0, caret);
    pp.prime = BigInt(base);
    if (caret != std::string::npos) {
      pp.exponent = static_cast<unsigned>(std::stoul(tok.substr(caret + 1)));
    }
    fs.push_back(std::move(pp));
    expect_star = true;
  }
  if (fs.size() == 1 && fs[0].prime == 1 && fs[0].exponent == 1) fs.clear();
  return from_factors(std::move(fs));
}

// Trial division over the table. Requires table.limit^2 >= n (any composite
// has a factor <= sqrt(n)); a leftover cofactor must itself be prime and is
// certified if within 64-bit range.
inline FactoredInteger factorize(std::uint64_t n, const PrimeTable& table) {
  if (n == 0) throw std::domain_error("factorize: n must be >= 1");
  std::vector<std::pair<std::uint64_t, unsigned>> pe;
  std::uint64_t m = n;
  for (std::uint64_t p : table.primes()) {
    if (p > m / p) break;
    if (m % p == 0) {
      unsigned e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      pe.emplace_back(p, e);
    }
  }
  if (m > 1) {
    if (!is_prime_u64(m)) {
      throw std::runtime_error(
          "factorize: remainder " + std::to_string(m) +
          " not reachable by trial division over this table");
    }
    pe.emplace_back(m, 1);
  }
  return FactoredInteger::from_u64_factors(pe);
}

}  // namespace abl
