#pragma once

// Exact arithmetic aliases and helpers. Arbitrary-precision integers and
// reduced rationals are GMP's mpz/mpq behind these names; everything exact
// in the library speaks these two types.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace abl {

using BigInt = mpz_class;
using Ratio = mpq_class;  // always canonical: gcd(num, den) = 1, den > 0

inline BigInt big_pow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline BigInt big_pow(std::uint64_t base, unsigned long e) {
  BigInt b;
  mpz_import(b.get_mpz_t(), 1, 1, sizeof(base), 0, 0, &base);
  return big_pow(b, e);
}

inline BigInt to_big(std::uint64_t v) {
  BigInt b;
  mpz_import(b.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return b;
}

inline BigInt to_big(unsigned __int128 v) {
  BigInt hi = to_big(static_cast<std::uint64_t>(v >> 64));
  BigInt lo = to_big(static_cast<std::uint64_t>(v));
  return (hi << 64) + lo;
}

inline Ratio make_ratio(const BigInt& num, const BigInt& den) {
  Ratio q(num, den);
  q.canonicalize();
  return q;
}

// Emits "num/den", or just "num" for integers.
inline std::string ratio_to_string(const Ratio& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Parses a decimal string (optionally signed, optional fractional part and
// exponent) into an exact rational, so "0.6482" means 6482/10000 and not the
// nearest double.
inline Ratio ratio_from_decimal(std::string_view s) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("bad decimal: " + std::string(s));
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else if (c == 'e' || c == 'E') {
      break;
    } else if (c == '/') {
      // "a/b" form
      Ratio q(std::string(s).c_str());
      q.canonicalize();
      return q;
    } else {
      throw std::invalid_argument("bad decimal: " + std::string(s));
    }
  }
  long exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    exp10 = std::stol(std::string(s.substr(i + 1)));
    i = s.size();
  }
  if (!seen_digit) throw std::invalid_argument("bad decimal: " + std::string(s));
  BigInt num(digits.empty() ? "0" : digits);
  if (neg) num = -num;
  long net = exp10 - frac_digits;
  BigInt den = 1;
  if (net >= 0) {
    num *= big_pow(BigInt(10), static_cast<unsigned long>(net));
  } else {
    den = big_pow(BigInt(10), static_cast<unsigned long>(-net));
  }
  return make_ratio(num, den);
}

}  // namespace abl
