#pragma once

// Reference constants and rational brackets used by exact-mode comparisons.
// Decimal strings are kept verbatim so higher-precision code paths can parse
// them instead of round-tripping through double.

#include <gmpxx.h>

#include <string_view>

namespace abl {

// Euler-Mascheroni constant.
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;
inline constexpr std::string_view euler_gamma_digits =
    "0.57721566490153286060651209008240243104215933593992";

// Meissel-Mertens constant B = lim ( sum_{p<=x} 1/p - loglog x ).
inline constexpr double mertens_B = 0.26149721284764278375542683860869586;
inline constexpr std::string_view mertens_B_digits =
    "0.26149721284764278375542683860869585905156664";

inline constexpr double exp_gamma = 1.78107241799019798523650410310718;
inline constexpr double pi_sq_over_6 = 1.64493406684822643647241516664603;
inline constexpr double six_over_pi_sq = 0.60792710185402662866327677925836;

// zeta values at small integer arguments; zeta(2), zeta(4), zeta(6) follow
// from the even closed forms, the odd ones are reference decimals.
inline constexpr double zeta_2 = 1.64493406684822643647241516664603;
inline constexpr double zeta_3 = 1.20205690315959428539973816151145;
inline constexpr double zeta_4 = 1.08232323371113819151600369654116;
inline constexpr double zeta_5 = 1.03692775514336992633136548645703;
inline constexpr double zeta_6 = 1.01734306198444913971451792979092;
inline constexpr double zeta_7 = 1.00834927738192282683979754984980;

// Rational brackets for exact-mode comparisons: lo < value < hi, exactly.
struct RationalBracket {
  mpq_class lo;
  mpq_class hi;
};

inline RationalBracket exp_gamma_bracket() {
  return {mpq_class(178107, 100000), mpq_class(178108, 100000)};
}

// 6079/10000 < 6/pi^2 < 608/1000 (6/pi^2 = 0.607927...).
inline RationalBracket six_over_pi_sq_bracket() {
  return {mpq_class(6079, 10000), mpq_class(608, 1000)};
}

inline RationalBracket zeta_bracket(unsigned s) {
  auto mk = [](long lo, long hi, long den) {
    return RationalBracket{mpq_class(lo, den), mpq_class(hi, den)};
  };
  switch (s) {
    case 2: return mk(1644934066848226, 1644934066848227, 1000000000000000);
    case 3: return mk(1202056903159594, 1202056903159595, 1000000000000000);
    case 4: return mk(1082323233711138, 1082323233711139, 1000000000000000);
    case 5: return mk(1036927755143369, 1036927755143370, 1000000000000000);
    case 6: return mk(1017343061984449, 1017343061984450, 1000000000000000);
    case 7: return mk(1008349277381922, 1008349277381923, 1000000000000000);
    default: break;
  }
  // zeta(s) in (1, 1 + 2^{1-s} * s/(s-1)): crude but exact bracket for s >= 8,
  // from 2^{-s} < zeta(s) - 1 - 2^{-s} < integral tail.
  mpq_class lo = 1 + mpq_class(1, 1L << (s > 62 ? 62 : s));
  mpq_class hi = 1 + mpq_class(4, 1L << (s > 62 ? 62 : s));
  return {lo, hi};
}

}  // namespace abl
