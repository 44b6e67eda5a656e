#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "bernoulli/numbers.hpp"

namespace bernoulli {

/// Arbitrary-precision dyadic float. Thin RAII wrapper over mpfr_t; all
/// arithmetic goes through free functions that take an explicit rounding
/// direction, so no operation can silently round to nearest.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 64) {
    mpfr_init2(v_, std::max<mpfr_prec_t>(prec, MPFR_PREC_MIN));
    mpfr_set_zero(v_, 1);
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);  // same precision: exact
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, o.prec());
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, o.prec());
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  static BigFloat of_double(double x, mpfr_prec_t prec = 64) {
    BigFloat r(std::max<mpfr_prec_t>(prec, 64));
    mpfr_set_d(r.v_, x, MPFR_RNDN);  // doubles are dyadic: exact at >= 64 bits
    return r;
  }
  static BigFloat of_long(long x, mpfr_prec_t prec = 64) {
    BigFloat r(std::max<mpfr_prec_t>(prec, 64));
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
  }
  static BigFloat of_int(const Int& x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_set_z(r.v_, x.backend().data(), rnd);
    return r;
  }
  static BigFloat of_rat(const Rat& x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_set_q(r.v_, x.backend().data(), rnd);
    return r;
  }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Exact rational value (always defined: finite mpfr values are dyadic).
  Rat to_rat() const {
    if (!mpfr_number_p(v_)) throw std::domain_error("BigFloat::to_rat: non-finite");
    Rat q;
    mpfr_get_q(q.backend().data(), v_);
    return q;
  }
  std::string str(std::size_t digits = 20) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

  friend int cmp(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) >= 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return cmp(a, b) == 0; }

 private:
  mpfr_t v_;
};

#define BERNOULLI_BF_BINOP(name, mpfr_fn)                                            \
  inline BigFloat name(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec,       \
                       mpfr_rnd_t rnd) {                                             \
    BigFloat r(prec);                                                                \
    mpfr_fn(r.raw(), a.raw(), b.raw(), rnd);                                         \
    return r;                                                                        \
  }
BERNOULLI_BF_BINOP(bf_add, mpfr_add)
BERNOULLI_BF_BINOP(bf_sub, mpfr_sub)
BERNOULLI_BF_BINOP(bf_mul, mpfr_mul)
BERNOULLI_BF_BINOP(bf_div, mpfr_div)
#undef BERNOULLI_BF_BINOP

#define BERNOULLI_BF_UNOP(name, mpfr_fn)                                             \
  inline BigFloat name(const BigFloat& a, mpfr_prec_t prec, mpfr_rnd_t rnd) {        \
    BigFloat r(prec);                                                                \
    mpfr_fn(r.raw(), a.raw(), rnd);                                                  \
    return r;                                                                        \
  }
BERNOULLI_BF_UNOP(bf_log, mpfr_log)
BERNOULLI_BF_UNOP(bf_exp, mpfr_exp)
BERNOULLI_BF_UNOP(bf_sqrt, mpfr_sqrt)
BERNOULLI_BF_UNOP(bf_neg, mpfr_neg)
BERNOULLI_BF_UNOP(bf_abs, mpfr_abs)
#undef BERNOULLI_BF_UNOP

inline BigFloat bf_pow_ui(const BigFloat& a, unsigned long e, mpfr_prec_t prec,
                          mpfr_rnd_t rnd) {
  BigFloat r(prec);
  mpfr_pow_ui(r.raw(), a.raw(), e, rnd);
  return r;
}
inline BigFloat bf_mul_2si(const BigFloat& a, long e, mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_mul_2si(r.raw(), a.raw(), e, MPFR_RNDN);  // exact scaling
  return r;
}

/// Certified real enclosure [lo, hi] with exact dyadic endpoints.
/// Every operation rounds outward, so the result always contains the exact
/// value of the operation applied to any points of the operands.
class Interval {
 public:
  Interval() : lo_(64), hi_(64), prec_(64) {}
  Interval(BigFloat lo, BigFloat hi, mpfr_prec_t prec)
      : lo_(std::move(lo)), hi_(std::move(hi)), prec_(prec) {
    if (cmp(lo_, hi_) > 0) throw std::invalid_argument("Interval: lo > hi");
  }

  static Interval point(double x, mpfr_prec_t prec = 64) {
    return Interval(BigFloat::of_double(x, prec), BigFloat::of_double(x, prec), prec);
  }
  static Interval point_long(long x, mpfr_prec_t prec = 64) {
    return Interval(BigFloat::of_long(x, prec), BigFloat::of_long(x, prec), prec);
  }
  static Interval of_int(const Int& x, mpfr_prec_t prec) {
    return Interval(BigFloat::of_int(x, prec, MPFR_RNDD),
                    BigFloat::of_int(x, prec, MPFR_RNDU), prec);
  }
  static Interval of_rat(const Rat& x, mpfr_prec_t prec) {
    return Interval(BigFloat::of_rat(x, prec, MPFR_RNDD),
                    BigFloat::of_rat(x, prec, MPFR_RNDU), prec);
  }
  static Interval of_rats(const Rat& lo, const Rat& hi, mpfr_prec_t prec) {
    if (lo > hi) throw std::invalid_argument("Interval::of_rats: lo > hi");
    return Interval(BigFloat::of_rat(lo, prec, MPFR_RNDD),
                    BigFloat::of_rat(hi, prec, MPFR_RNDU), prec);
  }
  static Interval hull(const Interval& a, const Interval& b) {
    mpfr_prec_t p = std::max(a.prec_, b.prec_);
    return Interval(cmp(a.lo_, b.lo_) <= 0 ? a.lo_ : b.lo_,
                    cmp(a.hi_, b.hi_) >= 0 ? a.hi_ : b.hi_, p);
  }
  /// Natural-log constant ln 2 as a tight enclosure.
  static Interval ln2(mpfr_prec_t prec) {
    BigFloat lo(prec), hi(prec);
    mpfr_const_log2(lo.raw(), MPFR_RNDD);
    mpfr_const_log2(hi.raw(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi), prec);
  }

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  mpfr_prec_t prec() const { return prec_; }
  double lo_d() const { return lo_.to_double(MPFR_RNDD); }
  double hi_d() const { return hi_.to_double(MPFR_RNDU); }
  double mid_d() const { return 0.5 * (lo_.to_double(MPFR_RNDN) + hi_.to_double(MPFR_RNDN)); }
  BigFloat mid(mpfr_prec_t prec) const {
    BigFloat m = bf_add(lo_, hi_, prec, MPFR_RNDN);
    mpfr_div_2ui(m.raw(), m.raw(), 1, MPFR_RNDN);
    return m;
  }
  double width_d() const {
    BigFloat w = bf_sub(hi_, lo_, prec_, MPFR_RNDU);
    return w.to_double(MPFR_RNDU);
  }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool contains_rat(const Rat& q) const { return lo_.to_rat() <= q && q <= hi_.to_rat(); }
  bool contains(const Interval& o) const {
    return cmp(lo_, o.lo_) <= 0 && cmp(o.hi_, hi_) <= 0;
  }
  bool disjoint(const Interval& o) const {
    return cmp(hi_, o.lo_) < 0 || cmp(o.hi_, lo_) < 0;
  }
  bool is_positive() const { return lo_.sign() > 0; }
  bool is_negative() const { return hi_.sign() < 0; }

  Interval with_prec(mpfr_prec_t p) const {
    BigFloat lo(p), hi(p);
    mpfr_set(lo.raw(), lo_.raw(), MPFR_RNDD);
    mpfr_set(hi.raw(), hi_.raw(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi), p);
  }

  Interval operator-() const {
    return Interval(bf_neg(hi_, prec_, MPFR_RNDD), bf_neg(lo_, prec_, MPFR_RNDU), prec_);
  }
  Interval add(const Interval& o) const {
    mpfr_prec_t p = std::max(prec_, o.prec_);
    return Interval(bf_add(lo_, o.lo_, p, MPFR_RNDD), bf_add(hi_, o.hi_, p, MPFR_RNDU), p);
  }
  Interval sub(const Interval& o) const {
    mpfr_prec_t p = std::max(prec_, o.prec_);
    return Interval(bf_sub(lo_, o.hi_, p, MPFR_RNDD), bf_sub(hi_, o.lo_, p, MPFR_RNDU), p);
  }
  Interval mul(const Interval& o) const {
    mpfr_prec_t p = std::max(prec_, o.prec_);
    BigFloat lo(p), hi(p), t(p);
    mpfr_mul(lo.raw(), lo_.raw(), o.lo_.raw(), MPFR_RNDD);
    mpfr_mul(t.raw(), lo_.raw(), o.hi_.raw(), MPFR_RNDD);
    mpfr_min(lo.raw(), lo.raw(), t.raw(), MPFR_RNDD);
    mpfr_mul(t.raw(), hi_.raw(), o.lo_.raw(), MPFR_RNDD);
    mpfr_min(lo.raw(), lo.raw(), t.raw(), MPFR_RNDD);
    mpfr_mul(t.raw(), hi_.raw(), o.hi_.raw(), MPFR_RNDD);
    mpfr_min(lo.raw(), lo.raw(), t.raw(), MPFR_RNDD);
    mpfr_mul(hi.raw(), lo_.raw(), o.lo_.raw(), MPFR_RNDU);
    mpfr_mul(t.raw(), lo_.raw(), o.hi_.raw(), MPFR_RNDU);
    mpfr_max(hi.raw(), hi.raw(), t.raw(), MPFR_RNDU);
    mpfr_mul(t.raw(), hi_.raw(), o.lo_.raw(), MPFR_RNDU);
    mpfr_max(hi.raw(), hi.raw(), t.raw(), MPFR_RNDU);
    mpfr_mul(t.raw(), hi_.raw(), o.hi_.raw(), MPFR_RNDU);
    mpfr_max(hi.raw(), hi.raw(), t.raw(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi), p);
  }
  Interval div(const Interval& o) const {
    if (o.contains_zero()) throw std::domain_error("Interval::div: divisor contains 0");
    mpfr_prec_t p = std::max(prec_, o.prec_);
    BigFloat lo(p), hi(p), t(p);
    mpfr_div(lo.raw(), lo_.raw(), o.lo_.raw(), MPFR_RNDD);
    mpfr_div(t.raw(), lo_.raw(), o.hi_.raw(), MPFR_RNDD);
    mpfr_min(lo.raw(), lo.raw(), t.raw(), MPFR_RNDD);
    mpfr_div(t.raw(), hi_.raw(), o.lo_.raw(), MPFR_RNDD);
    mpfr_min(lo.raw(), lo.raw(), t.raw(), MPFR_RNDD);
    mpfr_div(t.raw(), hi_.raw(), o.hi_.raw(), MPFR_RNDD);
    mpfr_min(lo.raw(), lo.raw(), t.raw(), MPFR_RNDD);
    mpfr_div(hi.raw(), lo_.raw(), o.lo_.raw(), MPFR_RNDU);
    mpfr_div(t.raw(), lo_.raw(), o.hi_.raw(), MPFR_RNDU);
    mpfr_max(hi.raw(), hi.raw(), t.raw(), MPFR_RNDU);
    mpfr_div(t.raw(), hi_.raw(), o.lo_.raw(), MPFR_RNDU);
    mpfr_max(hi.raw(), hi.raw(), t.raw(), MPFR_RNDU);
    mpfr_div(t.raw(), hi_.raw(), o.hi_.raw(), MPFR_RNDU);
    mpfr_max(hi.raw(), hi.raw(), t.raw(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi), p);
  }
  Interval abs() const {
    if (lo_.sign() >= 0) return *this;
    if (hi_.sign() <= 0) return -*this;
    BigFloat lo(prec_), hi(prec_), t(prec_);
    mpfr_set_zero(lo.raw(), 1);
    mpfr_neg(t.raw(), lo_.raw(), MPFR_RNDU);
    mpfr_max(hi.raw(), hi_.raw(), t.raw(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi), prec_);
  }
  /// Largest absolute value attained (upper bound).
  BigFloat mag() const {
    BigFloat t = bf_neg(lo_, prec_, MPFR_RNDU), r(prec_);
    mpfr_max(r.raw(), hi_.raw(), t.raw(), MPFR_RNDU);
    return r;
  }
  /// Smallest absolute value attained (lower bound; 0 if the interval straddles 0).
  BigFloat mig() const {
    BigFloat r(prec_);
    if (contains_zero()) {
      mpfr_set_zero(r.raw(), 1);
      return r;
    }
    if (lo_.sign() > 0) return lo_;
    return bf_neg(hi_, prec_, MPFR_RNDD);
  }
  Interval log() const {
    if (lo_.sign() <= 0) throw std::domain_error("Interval::log: lo <= 0");
    return Interval(bf_log(lo_, prec_, MPFR_RNDD), bf_log(hi_, prec_, MPFR_RNDU), prec_);
  }
  Interval exp() const {
    return Interval(bf_exp(lo_, prec_, MPFR_RNDD), bf_exp(hi_, prec_, MPFR_RNDU), prec_);
  }
  Interval sqrt() const {
    if (lo_.sign() < 0) throw std::domain_error("Interval::sqrt: lo < 0");
    return Interval(bf_sqrt(lo_, prec_, MPFR_RNDD), bf_sqrt(hi_, prec_, MPFR_RNDU), prec_);
  }
  /// x^e for integer e >= 0, exact range (monotone cases handled directly).
  Interval pow_ui(unsigned long e) const {
    if (e == 0) return point_long(1, prec_);
    bool even = (e % 2 == 0);
    if (!even || lo_.sign() >= 0)
      return Interval(bf_pow_ui(lo_, e, prec_, MPFR_RNDD),
                      bf_pow_ui(hi_, e, prec_, MPFR_RNDU), prec_);
    if (hi_.sign() <= 0)
      return Interval(bf_pow_ui(hi_, e, prec_, MPFR_RNDD),
                      bf_pow_ui(lo_, e, prec_, MPFR_RNDU), prec_);
    BigFloat lo(prec_), hi(prec_);
    mpfr_set_zero(lo.raw(), 1);
    BigFloat m = mag();
    mpfr_pow_ui(hi.raw(), m.raw(), e, MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi), prec_);
  }
  Interval mul_2si(long e) const {
    return Interval(bf_mul_2si(lo_, e, prec_), bf_mul_2si(hi_, e, prec_), prec_);
  }
  Interval widened_by(const BigFloat& eps) const {
    return Interval(bf_sub(lo_, eps, prec_, MPFR_RNDD), bf_add(hi_, eps, prec_, MPFR_RNDU),
                    prec_);
  }

  std::string str(std::size_t digits = 20) const {
    return "[" + lo_.str(digits) + ", " + hi_.str(digits) + "]";
  }

 private:
  BigFloat lo_, hi_;
  mpfr_prec_t prec_;
};

inline Interval imin(const Interval& a, const Interval& b) {
  mpfr_prec_t p = std::max(a.prec(), b.prec());
  BigFloat lo(p), hi(p);
  mpfr_min(lo.raw(), a.lo().raw(), b.lo().raw(), MPFR_RNDD);
  mpfr_min(hi.raw(), a.hi().raw(), b.hi().raw(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi), p);
}

inline Interval imax(const Interval& a, const Interval& b) {
  mpfr_prec_t p = std::max(a.prec(), b.prec());
  BigFloat lo(p), hi(p);
  mpfr_max(lo.raw(), a.lo().raw(), b.lo().raw(), MPFR_RNDD);
  mpfr_max(hi.raw(), a.hi().raw(), b.hi().raw(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi), p);
}

}  // namespace bernoulli
