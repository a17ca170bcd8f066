#pragma once

// Directed-rounding interval scalar over MPFR. Every operation rounds the
// lower endpoint down and the upper endpoint up, so [lo, hi] always encloses
// the exact value. Verdicts taken from interval signs are certified; when an
// interval straddles zero the caller escalates precision or reports
// indeterminate.

#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace abl {

class MpFloat {
 public:
  explicit MpFloat(mpfr_prec_t prec = 128) { mpfr_init2(v_, prec); }
  MpFloat(const MpFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  MpFloat(MpFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  MpFloat& operator=(MpFloat o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~MpFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // MPFR values are dyadic rationals; the conversion is exact.
  mpq_class to_exact_rational() const {
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, v_);
    mpq_class out(q);
    mpq_clear(q);
    return out;
  }

 private:
  mpfr_t v_;
};

class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128) : lo_(prec), hi_(prec), prec_(prec) {}

  static Interval exactly(double x, mpfr_prec_t prec = 128) {
    Interval r(prec);
    mpfr_set_d(r.lo_.get(), x, MPFR_RNDD);
    mpfr_set_d(r.hi_.get(), x, MPFR_RNDU);
    return r;
  }
  static Interval exactly(std::uint64_t x, mpfr_prec_t prec = 128) {
    Interval r(prec);
    mpfr_set_uj(r.lo_.get(), x, MPFR_RNDD);
    mpfr_set_uj(r.hi_.get(), x, MPFR_RNDU);
    return r;
  }
  static Interval exactly(const mpz_class& x, mpfr_prec_t prec = 128) {
    Interval r(prec);
    mpfr_set_z(r.lo_.get(), x.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_.get(), x.get_mpz_t(), MPFR_RNDU);
    return r;
  }
  static Interval exactly(const mpq_class& x, mpfr_prec_t prec = 128) {
    Interval r(prec);
    mpfr_set_q(r.lo_.get(), x.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), x.get_mpq_t(), MPFR_RNDU);
    return r;
  }
  static Interval from_decimal(std::string_view digits, mpfr_prec_t prec = 128) {
    Interval r(prec);
    std::string s(digits);
    mpfr_set_str(r.lo_.get(), s.c_str(), 10, MPFR_RNDD);
    mpfr_set_str(r.hi_.get(), s.c_str(), 10, MPFR_RNDU);
    return r;
  }
  static Interval euler_gamma(mpfr_prec_t prec = 128) {
    Interval r(prec);
    mpfr_const_euler(r.lo_.get(), MPFR_RNDD);
    mpfr_const_euler(r.hi_.get(), MPFR_RNDU);
    return r;
  }

  mpfr_prec_t precision() const { return prec_; }
  double lo() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
  double hi() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }
  double mid() const { return 0.5 * (lo() + hi()); }
  double width() const {
    MpFloat w(prec_);
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return mpfr_get_d(w.get(), MPFR_RNDU);
  }

  mpq_class lo_exact() const { return lo_.to_exact_rational(); }
  mpq_class hi_exact() const { return hi_.to_exact_rational(); }

  Interval operator+(const Interval& o) const {
    Interval r(prec_);
    mpfr_add(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
    return r;
  }
  Interval operator-(const Interval& o) const {
    Interval r(prec_);
    mpfr_sub(r.lo_.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
    return r;
  }
  // Multiplication for intervals with non-negative lower endpoints (every use
  // here multiplies positive quantities).
  Interval operator*(const Interval& o) const {
    if (mpfr_sgn(lo_.get()) < 0 || mpfr_sgn(o.lo_.get()) < 0) {
      throw std::domain_error("Interval::operator* requires non-negative operands");
    }
    Interval r(prec_);
    mpfr_mul(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
    mpfr_mul(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
    return r;
  }
  Interval operator/(const Interval& o) const {
    if (mpfr_sgn(lo_.get()) < 0 || mpfr_sgn(o.lo_.get()) <= 0) {
      throw std::domain_error("Interval::operator/ requires positive divisor");
    }
    Interval r(prec_);
    mpfr_div(r.lo_.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
    mpfr_div(r.hi_.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
    return r;
  }

  Interval log() const {
    Interval r(prec_);
    mpfr_log(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_log(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
  }
  Interval exp() const {
    Interval r(prec_);
    mpfr_exp(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_exp(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
  }
  // log(1 + x), monotone increasing so endpoints map directly.
  Interval log1p() const {
    Interval r(prec_);
    mpfr_log1p(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_log1p(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
  }
  Interval neg() const {
    Interval r(prec_);
    mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
    return r;
  }

  // Certified sign of the whole interval: +1, -1, or 0 (straddles / touches).
  int certified_sign() const {
    if (mpfr_sgn(lo_.get()) > 0) return 1;
    if (mpfr_sgn(hi_.get()) < 0) return -1;
    return 0;
  }

 private:
  MpFloat lo_;
  MpFloat hi_;
  mpfr_prec_t prec_;
};

// Evaluates `f(prec)` at escalating precision until the margin interval has a
// certain sign or max_prec is exceeded. Returns the last interval either way.
template <typename F>
Interval certify_sign(F&& f, mpfr_prec_t start_prec = 128,
                      mpfr_prec_t max_prec = 2048) {
  mpfr_prec_t prec = start_prec;
  Interval last = f(prec);
  while (last.certified_sign() == 0 && prec < max_prec) {
    prec *= 2;
    last = f(prec);
  }
  return last;
}

}  // namespace abl
