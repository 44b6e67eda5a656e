#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bernoulli/interval.hpp"
#include "bernoulli/numbers.hpp"
#include "bernoulli/polynomial.hpp"

namespace bernoulli {

/// Sturm chain of a squarefree integer polynomial. Sign-variation counts give
/// exact root counts: V(a) - V(b) is the number of roots in (a, b].
class SturmSequence {
 public:
  explicit SturmSequence(const IntPolynomial& squarefree) {
    chain_.emplace_back(squarefree);
    if (squarefree.degree() >= 1) {
      chain_.emplace_back(squarefree.derivative());
      while (chain_.back().degree() >= 1) {
        RatPoly rem = RatPoly::div_rem(chain_[chain_.size() - 2], chain_.back()).second;
        if (rem.is_zero()) break;  // only for non-squarefree input
        chain_.push_back(rem.scaled(Rat(-1)));
      }
    }
  }

  int variations_at(const Rat& x) const {
    int var = 0, last = 0;
    for (const auto& p : chain_) {
      int s = sign_of(p.eval(x));
      if (s == 0) continue;
      if (last != 0 && s != last) ++var;
      last = s;
    }
    return var;
  }

  /// Number of distinct roots in the half-open interval (a, b].
  int count_half_open(const Rat& a, const Rat& b) const {
    if (a >= b) return 0;
    return variations_at(a) - variations_at(b);
  }
  /// Number of distinct roots in the open interval (a, b).
  int count_open(const Rat& a, const Rat& b) const {
    if (a >= b) return 0;
    int n = count_half_open(a, b);
    if (chain_.front().eval(b) == 0) --n;
    return n;
  }

  const RatPoly& poly() const { return chain_.front(); }

 private:
  std::vector<RatPoly> chain_;
};

namespace detail {

/// Cauchy root bound: all complex roots have |z| < 1 + max |c_i| / |lead|.
inline Rat cauchy_bound(const IntPolynomial& p) {
  Rat m = 0;
  Rat lead = abs_rat(Rat(p.leading()));
  for (int i = 0; i < p.degree(); ++i) {
    Rat a = abs_rat(Rat(p.coeff(static_cast<std::size_t>(i)))) / lead;
    if (a > m) m = a;
  }
  Rat b = 1 + m;
  // round up to an integer so bisection endpoints stay dyadic
  Int n = numerator(b) / denominator(b) + 1;
  return Rat(n);
}

/// Exact division of p by (x - m); p(m) must be 0.
inline IntPolynomial divide_out_root(const IntPolynomial& p, const Rat& m) {
  std::vector<Rat> div{Rat(-m), Rat(1)};
  auto [q, r] = RatPoly::div_rem(RatPoly(p), RatPoly(std::move(div)));
  if (!r.is_zero()) throw std::logic_error("divide_out_root: not a root");
  return q.to_primitive_int();
}

}  // namespace detail

/// An isolating interval with exact rational (dyadic) endpoints.
/// lo == hi marks an exact rational root.
struct RootBracket {
  Rat lo, hi;
  bool exact() const { return lo == hi; }
  Rat width() const { return hi - lo; }
};

/// Bisect a bracket of a simple root (sign change or exact) down to `target`.
inline RootBracket refine_bracket(const IntPolynomial& p, RootBracket b, const Rat& target) {
  if (b.exact()) return b;
  int slo = sign_of(p.eval_rat(b.lo));
  while (b.width() > target) {
    Rat m = (b.lo + b.hi) / 2;
    int sm = sign_of(p.eval_rat(m));
    if (sm == 0) return {m, m};
    if (sm == slo)
      b.lo = m;
    else
      b.hi = m;
  }
  return b;
}

namespace detail {

inline void isolate_rec(const IntPolynomial& p, const SturmSequence& chain, const Rat& a,
                        const Rat& b, int count, const Rat& target,
                        std::vector<RootBracket>& out) {
  if (count <= 0) return;
  if (count == 1 && b - a <= target) {
    out.push_back({a, b});
    return;
  }
  // pick a split point that is not a root; at most deg(p) candidates can fail
  for (long j = 1;; ++j) {
    Rat m = j == 1 ? (a + b) / 2 : a + (b - a) * Rat(j, 2 * j + 1);
    if (p.eval_rat(m) != 0) {
      int right = chain.count_half_open(m, b);
      isolate_rec(p, chain, a, m, count - right, target, out);
      isolate_rec(p, chain, m, b, right, target, out);
      return;
    }
    // exact root at m: emit it, divide it out, and recurse on both sides
    out.push_back({m, m});
    IntPolynomial q = detail::divide_out_root(p, m);
    if (q.degree() < 1) return;
    SturmSequence qchain(q);
    // carve out a root-free neighborhood of m so no later interval can touch it
    Rat w = (b - a) / 4;
    while (qchain.count_half_open(m - w, m + w) > 0) w /= 2;
    isolate_rec(q, qchain, a, m - w, qchain.count_open(a, m - w), target, out);
    isolate_rec(q, qchain, m + w, b, qchain.count_open(m + w, b), target, out);
    return;
  }
}

}  // namespace detail

/// Isolates all real roots of P in the open interval (a, b): pairwise-disjoint
/// brackets of width <= target, each containing exactly one real root.
/// P is replaced by its squarefree part first.
inline std::vector<RootBracket> isolate_real_roots_in(const IntPolynomial& P, const Rat& a,
                                                      const Rat& b, const Rat& target) {
  if (P.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
  IntPolynomial s = P.squarefree_part();
  std::vector<RootBracket> out;
  if (s.degree() < 1) return out;
  // shrink the window if an endpoint happens to be a root (endpoints are
  // excluded, so the shift must not change the open-interval root count)
  Rat lo = a, hi = b;
  SturmSequence chain(s);
  int count = chain.count_open(lo, hi);
  Rat step = (hi - lo) / 1048576;
  while (s.eval_rat(lo) == 0) {
    while (chain.count_open(lo + step, hi) != count) step /= 2;
    lo += step;
  }
  while (s.eval_rat(hi) == 0) {
    while (chain.count_open(lo, hi - step) != count) step /= 2;
    hi -= step;
  }
  detail::isolate_rec(s, chain, lo, hi, count, target, out);
  std::sort(out.begin(), out.end(), [](const RootBracket& x, const RootBracket& y) {
    return x.lo < y.lo;
  });
  // tidy up shared endpoints so brackets are disjoint as point sets
  for (std::size_t i = 0; i + 1 < out.size(); ++i) {
    while (!out[i].exact() && !out[i + 1].exact() && out[i].hi >= out[i + 1].lo) {
      out[i] = refine_bracket(s, out[i], out[i].width() / 2);
      out[i + 1] = refine_bracket(s, out[i + 1], out[i + 1].width() / 2);
    }
  }
  return out;
}

inline std::vector<RootBracket> isolate_real_root_brackets(const IntPolynomial& P,
                                                           const Rat& target) {
  if (P.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
  if (P.degree() < 1) return {};
  Rat b = detail::cauchy_bound(P);
  return isolate_real_roots_in(P, -b, b, target);
}

inline mpfr_prec_t prec_for_bracket_width(const Rat& target) {
  long bits = 64;
  Rat w = target;
  while (w < 1 && bits < 1 << 20) {
    w *= 2;
    bits += 1;
  }
  return static_cast<mpfr_prec_t>(bits + 64);
}

/// Public form of root isolation: certified Interval enclosures.
inline std::vector<Interval> isolate_real_roots(const IntPolynomial& P, const Rat& target) {
  auto brackets = isolate_real_root_brackets(P, target);
  mpfr_prec_t prec = prec_for_bracket_width(target);
  std::vector<Interval> out;
  out.reserve(brackets.size());
  for (const auto& b : brackets) out.push_back(Interval::of_rats(b.lo, b.hi, prec));
  return out;
}

/// A real algebraic number: a squarefree primitive defining polynomial plus an
/// isolating bracket containing exactly one of its real roots. Values are
/// immutable; refinement returns tighter brackets without visible mutation.
class AlgebraicNumber {
 public:
  AlgebraicNumber(IntPolynomial defining, RootBracket isolator)
      : defining_(std::move(defining)), iso_(std::move(isolator)) {
    if (defining_.degree() < 1)
      throw std::invalid_argument("AlgebraicNumber: constant defining polynomial");
  }

  /// Selects the unique root of P inside (lo, hi); throws if the window does
  /// not isolate exactly one real root.
  static AlgebraicNumber select_root(const IntPolynomial& P, const Rat& lo, const Rat& hi) {
    IntPolynomial s = P.squarefree_part();
    auto roots = isolate_real_roots_in(s, lo, hi, hi - lo);
    if (roots.size() != 1)
      throw std::invalid_argument("select_root: window contains " +
                                  std::to_string(roots.size()) + " roots, expected 1");
    return AlgebraicNumber(std::move(s), roots.front());
  }

  const IntPolynomial& defining() const { return defining_; }
  int degree() const { return defining_.degree(); }
  const RootBracket& isolator() const { return iso_; }

  bool is_rational() const { return iso_.exact() || defining_.degree() == 1; }
  Rat rational_value() const {
    if (iso_.exact()) return iso_.lo;
    if (defining_.degree() == 1)
      return Rat(-defining_.coeff(0)) / Rat(defining_.coeff(1));
    throw std::domain_error("rational_value: not rational");
  }

  RootBracket refined(const Rat& target) const {
    if (is_rational()) {
      Rat v = rational_value();
      return {v, v};
    }
    return refine_bracket(defining_, iso_, target);
  }

  /// Certified enclosure of width about 2^-prec.
  Interval enclosure(mpfr_prec_t prec) const {
    Rat target = Rat(1) / Rat(pow_int(2, static_cast<unsigned long>(prec)));
    RootBracket b = refined(target);
    return Interval::of_rats(b.lo, b.hi, prec + 64);
  }

 private:
  IntPolynomial defining_;
  RootBracket iso_;
};

/// Complex rectangle enclosure; the 2-D analogue of Interval.
struct CBox {
  Interval re, im;

  CBox add(const CBox& o) const { return {re.add(o.re), im.add(o.im)}; }
  CBox sub(const CBox& o) const { return {re.sub(o.re), im.sub(o.im)}; }
  CBox mul(const CBox& o) const {
    return {re.mul(o.re).sub(im.mul(o.im)), re.mul(o.im).add(im.mul(o.re))};
  }
  Interval modulus() const { return re.pow_ui(2).add(im.pow_ui(2)).sqrt(); }
};

inline CBox eval_poly_cbox(const IntPolynomial& p, const CBox& z, mpfr_prec_t prec) {
  CBox acc{Interval::of_int(p.leading(), prec), Interval::point_long(0, prec)};
  for (int i = p.degree() - 1; i >= 0; --i) {
    acc = acc.mul(z);
    acc.re = acc.re.add(Interval::of_int(p.coeff(static_cast<std::size_t>(i)), prec));
  }
  return acc;
}

/// Certified complex root disk: when `certified`, the disk contains exactly
/// one root of its source polynomial.
struct Disk {
  BigFloat center_re, center_im, radius;
  bool certified = false;

  double re_d() const { return center_re.to_double(); }
  double im_d() const { return center_im.to_double(); }
  double radius_d() const { return radius.to_double(MPFR_RNDU); }
  /// Enclosure of |z| over the disk.
  Interval modulus(mpfr_prec_t prec) const {
    CBox c{Interval(center_re, center_re, prec), Interval(center_im, center_im, prec)};
    Interval m = c.modulus();
    Interval r(radius, radius, prec);
    Interval lo = m.sub(r), hi = m.add(r);
    BigFloat zero(prec);
    mpfr_set_zero(zero.raw(), 1);
    BigFloat l = lo.lo() < zero ? zero : lo.lo();
    return Interval(std::move(l), hi.hi(), prec);
  }
};

struct PrecisionExhausted : std::runtime_error {
  std::vector<Disk> best_effort;
  explicit PrecisionExhausted(std::vector<Disk> disks)
      : std::runtime_error("complex_root_disks: precision budget exhausted before disjointness"),
        best_effort(std::move(disks)) {}
};

namespace detail {

inline std::vector<std::complex<double>> durand_kerner(const IntPolynomial& p) {
  int d = p.degree();
  std::vector<std::complex<double>> c(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i)
    c[static_cast<std::size_t>(i)] =
        BigFloat::of_int(p.coeff(static_cast<std::size_t>(i)), 64, MPFR_RNDN).to_double();
  for (auto& x : c) x /= c[static_cast<std::size_t>(d)];
  double bound = 1.0;
  for (int i = 0; i < d; ++i) bound = std::max(bound, std::abs(c[static_cast<std::size_t>(i)]));
  bound += 1.0;
  std::vector<std::complex<double>> z(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k)
    z[static_cast<std::size_t>(k)] =
        0.7 * bound * std::polar(1.0, 2.0 * M_PI * (k + 0.25) / d + 0.3);
  auto eval = [&](std::complex<double> x) {
    std::complex<double> r = 0;
    for (int i = d; i >= 0; --i) r = r * x + c[static_cast<std::size_t>(i)];
    return r;
  };
  for (int it = 0; it < 2000; ++it) {
    double moved = 0;
    for (int k = 0; k < d; ++k) {
      std::complex<double> denom = 1;
      for (int j = 0; j < d; ++j)
        if (j != k) denom *= z[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(j)];
      std::complex<double> step = eval(z[static_cast<std::size_t>(k)]) / denom;
      z[static_cast<std::size_t>(k)] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-15 * bound) break;
  }
  return z;
}

struct CFloat {
  BigFloat re, im;
};

inline CFloat newton_polish(const IntPolynomial& p, const IntPolynomial& dp, CFloat z,
                            mpfr_prec_t prec, int iters) {
  // plain complex Newton at working precision (not certified; certification
  // comes from the residual bound afterwards)
  auto eval = [&](const IntPolynomial& q, const CFloat& x) {
    BigFloat re(prec), im(prec), t1(prec), t2(prec);
    mpfr_set_zero(re.raw(), 1);
    mpfr_set_zero(im.raw(), 1);
    for (int i = q.degree(); i >= 0; --i) {
      // (re + i*im) * x
      mpfr_mul(t1.raw(), re.raw(), x.re.raw(), MPFR_RNDN);
      mpfr_mul(t2.raw(), im.raw(), x.im.raw(), MPFR_RNDN);
      mpfr_sub(t1.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
      mpfr_mul(t2.raw(), re.raw(), x.im.raw(), MPFR_RNDN);
      mpfr_fma(im.raw(), im.raw(), x.re.raw(), t2.raw(), MPFR_RNDN);
      mpfr_set(re.raw(), t1.raw(), MPFR_RNDN);
      BigFloat ci = BigFloat::of_int(q.coeff(static_cast<std::size_t>(i)), prec, MPFR_RNDN);
      mpfr_add(re.raw(), re.raw(), ci.raw(), MPFR_RNDN);
    }
    return CFloat{std::move(re), std::move(im)};
  };
  for (int it = 0; it < iters; ++it) {
    CFloat f = eval(p, z), g = eval(dp, z);
    BigFloat den(prec), t(prec), qre(prec), qim(prec);
    mpfr_mul(den.raw(), g.re.raw(), g.re.raw(), MPFR_RNDN);
    mpfr_fma(den.raw(), g.im.raw(), g.im.raw(), den.raw(), MPFR_RNDN);
    if (den.is_zero()) break;
    mpfr_mul(qre.raw(), f.re.raw(), g.re.raw(), MPFR_RNDN);
    mpfr_fma(qre.raw(), f.im.raw(), g.im.raw(), qre.raw(), MPFR_RNDN);
    mpfr_div(qre.raw(), qre.raw(), den.raw(), MPFR_RNDN);
    mpfr_mul(qim.raw(), f.im.raw(), g.re.raw(), MPFR_RNDN);
    mpfr_mul(t.raw(), f.re.raw(), g.im.raw(), MPFR_RNDN);
    mpfr_sub(qim.raw(), qim.raw(), t.raw(), MPFR_RNDN);
    mpfr_div(qim.raw(), qim.raw(), den.raw(), MPFR_RNDN);
    mpfr_sub(z.re.raw(), z.re.raw(), qre.raw(), MPFR_RNDN);
    mpfr_sub(z.im.raw(), z.im.raw(), qim.raw(), MPFR_RNDN);
  }
  return z;
}

}  // namespace detail

/// Certified root disks of a squarefree polynomial: deg(P) pairwise-disjoint
/// disks, each containing exactly one complex root. Refinement: Durand-Kerner
/// start, Newton polish at working precision, residual-based inclusion radius
/// (every disk of radius d*|P(z)/P'(z)| around z contains at least one root).
inline std::vector<Disk> complex_root_disks(const IntPolynomial& P, mpfr_prec_t prec,
                                            mpfr_prec_t prec_cap = 1 << 14) {
  if (P.is_zero()) throw std::invalid_argument("complex_root_disks: zero polynomial");
  IntPolynomial p = P.primitive_part();
  int d = p.degree();
  if (d < 1) return {};
  {
    RatPoly g = RatPoly::gcd(RatPoly(p), RatPoly(p.derivative()));
    if (g.degree() >= 1)
      throw std::invalid_argument("complex_root_disks: polynomial is not squarefree");
  }
  IntPolynomial dp = p.derivative();
  auto seeds = detail::durand_kerner(p);

  std::vector<Disk> best;
  for (mpfr_prec_t work = prec + 64; work <= prec_cap; work *= 2) {
    std::vector<Disk> disks;
    disks.reserve(static_cast<std::size_t>(d));
    bool all_ok = true;
    for (int k = 0; k < d; ++k) {
      detail::CFloat z{BigFloat::of_double(seeds[static_cast<std::size_t>(k)].real(), work),
                       BigFloat::of_double(seeds[static_cast<std::size_t>(k)].imag(), work)};
      int iters = 3;
      for (mpfr_prec_t b = 64; b < work; b *= 2) ++iters;
      z = detail::newton_polish(p, dp, std::move(z), work, iters);
      CBox zbox{Interval(z.re, z.re, work), Interval(z.im, z.im, work)};
      Interval fz = eval_poly_cbox(p, zbox, work).modulus();
      Interval dfz = eval_poly_cbox(dp, zbox, work).modulus();
      Disk disk{z.re, z.im, BigFloat(work), false};
      if (dfz.lo().sign() <= 0) {
        all_ok = false;
        mpfr_set_inf(disk.radius.raw(), 1);
      } else {
        BigFloat r = bf_div(fz.hi(), dfz.lo(), work, MPFR_RNDU);
        mpfr_mul_ui(r.raw(), r.raw(), static_cast<unsigned long>(d), MPFR_RNDU);
        disk.radius = std::move(r);
        disk.certified = true;  // provisional; needs pairwise disjointness
      }
      disks.push_back(std::move(disk));
    }
    if (all_ok) {
      for (int i = 0; i < d && all_ok; ++i)
        for (int j = i + 1; j < d && all_ok; ++j) {
          const Disk &a = disks[static_cast<std::size_t>(i)], &b = disks[static_cast<std::size_t>(j)];
          BigFloat dre = bf_sub(a.center_re, b.center_re, work, MPFR_RNDZ);
          BigFloat dim = bf_sub(a.center_im, b.center_im, work, MPFR_RNDZ);
          BigFloat dist(work);
          mpfr_hypot(dist.raw(), dre.raw(), dim.raw(), MPFR_RNDD);
          mpfr_nextbelow(dist.raw());  // hypot after directed subs: keep it safe
          BigFloat rsum = bf_add(a.radius, b.radius, work, MPFR_RNDU);
          if (!(dist > rsum)) all_ok = false;
        }
    }
    if (all_ok) {
      // d disjoint disks, each containing at least one of the d roots:
      // each contains exactly one.
      return disks;
    }
    for (auto& disk : disks) disk.certified = false;
    best = std::move(disks);
  }
  throw PrecisionExhausted(std::move(best));
}

/// Mahler measure enclosure: |lead(P)| times the product of the moduli of the
/// roots outside the unit circle. A root whose modulus enclosure straddles 1
/// at the precision cap contributes the sound factor [1, hi].
inline Interval mahler_measure(const IntPolynomial& P, mpfr_prec_t prec = 128,
                               mpfr_prec_t straddle_cap = 4096) {
  if (P.is_zero()) throw std::invalid_argument("mahler_measure: zero polynomial");
  Int lead = P.leading() < 0 ? Int(-P.leading()) : P.leading();
  Interval result = Interval::of_int(lead, prec);
  if (P.degree() < 1) return result;

  Interval one = Interval::point_long(1, prec);
  for (const auto& [q, mult] : P.squarefree_decomposition()) {
    std::vector<Interval> factors;
    for (mpfr_prec_t work = prec;; work *= 2) {
      factors.clear();
      bool straddle = false;
      for (const auto& disk : complex_root_disks(q, work)) {
        Interval m = disk.modulus(work);
        if (m.lo() > one.lo())
          factors.push_back(m);
        else if (m.hi() > one.hi()) {
          straddle = true;
          factors.push_back(imax(m, one));  // sound: the factor is max(|root|, 1)
        }
      }
      if (!straddle || work >= straddle_cap) break;
    }
    for (const auto& f : factors)
      for (unsigned i = 0; i < mult; ++i) result = result.mul(f.with_prec(prec));
  }
  return result;
}

}  // namespace bernoulli
