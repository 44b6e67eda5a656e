#pragma once

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bernoulli/interval.hpp"
#include "bernoulli/numbers.hpp"

namespace bernoulli {

class RatPoly;

/// Dense integer polynomial, coefficients in ascending degree order.
/// Trailing zeros are trimmed on construction; the zero polynomial has
/// degree() == -1.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

  /// Parses the CLI text format: comma-separated exact integers, ascending
  /// degree ("-1,1,1" is -1 + x + x^2).
  static IntPolynomial parse(std::string_view s) {
    std::vector<Int> c;
    std::string cur;
    auto flush = [&] {
      if (cur.empty()) throw std::invalid_argument("polynomial: empty coefficient");
      c.emplace_back(cur);
      cur.clear();
    };
    for (char ch : s) {
      if (ch == ',') {
        flush();
      } else if (!std::isspace(static_cast<unsigned char>(ch))) {
        cur += ch;
      }
    }
    flush();
    return IntPolynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Int& coeff(std::size_t i) const {
    static const Int zero = 0;
    return i < c_.size() ? c_[i] : zero;
  }
  const std::vector<Int>& coeffs() const { return c_; }
  const Int& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  Rat eval_rat(const Rat& x) const {
    Rat r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + Rat(*it);
    return r;
  }
  Int eval_int(const Int& x) const {
    Int r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }

  IntPolynomial derivative() const {
    if (c_.size() <= 1) return IntPolynomial();
    std::vector<Int> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Int(i);
    return IntPolynomial(std::move(d));
  }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), Int(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return IntPolynomial(std::move(c));
  }
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), Int(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return IntPolynomial(std::move(c));
  }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return IntPolynomial();
    std::vector<Int> c(a.c_.size() + b.c_.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return IntPolynomial(std::move(c));
  }
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.c_ == b.c_;
  }

  IntPolynomial negate() const {
    std::vector<Int> c(c_);
    for (auto& x : c) x = -x;
    return IntPolynomial(std::move(c));
  }

  /// x^deg * P(1/x): coefficient reversal.
  IntPolynomial reversed() const {
    std::vector<Int> c(c_.rbegin(), c_.rend());
    return IntPolynomial(std::move(c));
  }

  Int content() const {
    Int g = 0;
    for (const auto& x : c_) {
      Int a = x < 0 ? Int(-x) : x;
      mpz_gcd(g.backend().data(), g.backend().data(), a.backend().data());
      if (g == 1) break;
    }
    return g;
  }
  /// Content removed; sign normalized so the leading coefficient is positive.
  IntPolynomial primitive_part() const {
    if (is_zero()) return *this;
    Int g = content();
    if (leading() < 0) g = -g;
    std::vector<Int> c(c_);
    for (auto& x : c) x /= g;
    return IntPolynomial(std::move(c));
  }

  IntPolynomial squarefree_part() const;
  std::vector<std::pair<IntPolynomial, unsigned>> squarefree_decomposition() const;

  std::string str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) os << ",";
      os << c_[i].str();
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Int> c_;
};

/// Dense rational polynomial; workhorse for division, gcd and Sturm chains.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  explicit RatPoly(const IntPolynomial& p) {
    c_.reserve(p.coeffs().size());
    for (const auto& x : p.coeffs()) c_.emplace_back(x);
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rat& coeff(std::size_t i) const {
    static const Rat zero = 0;
    return i < c_.size() ? c_[i] : zero;
  }
  const std::vector<Rat>& coeffs() const { return c_; }
  const Rat& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  Rat eval(const Rat& x) const {
    Rat r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }

  RatPoly derivative() const {
    if (c_.size() <= 1) return RatPoly();
    std::vector<Rat> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rat(i);
    return RatPoly(std::move(d));
  }

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return RatPoly(std::move(c));
  }
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b) {
    std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return RatPoly(std::move(c));
  }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return RatPoly();
    std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return RatPoly(std::move(c));
  }
  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

  RatPoly scaled(const Rat& k) const {
    std::vector<Rat> c(c_);
    for (auto& x : c) x *= k;
    return RatPoly(std::move(c));
  }

  /// Euclidean division: returns (quotient, remainder) with deg rem < deg divisor.
  static std::pair<RatPoly, RatPoly> div_rem(const RatPoly& num, const RatPoly& den) {
    if (den.is_zero()) throw std::domain_error("RatPoly::div_rem: zero divisor");
    std::vector<Rat> rem(num.c_);
    int dn = num.degree(), dd = den.degree();
    if (dn < dd) return {RatPoly(), num};
    std::vector<Rat> quot(static_cast<std::size_t>(dn - dd) + 1, Rat(0));
    for (int k = dn; k >= dd; --k) {
      Rat q = rem[static_cast<std::size_t>(k)] / den.leading();
      if (q == 0) continue;
      quot[static_cast<std::size_t>(k - dd)] = q;
      for (int j = 0; j <= dd; ++j)
        rem[static_cast<std::size_t>(k - dd + j)] -= q * den.coeff(static_cast<std::size_t>(j));
    }
    return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
  }

  /// Monic gcd via the Euclidean algorithm.
  static RatPoly gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
      RatPoly r = div_rem(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.scaled(Rat(1) / a.leading());
  }

  /// Clears denominators, returns the primitive integer polynomial.
  IntPolynomial to_primitive_int() const {
    if (is_zero()) return IntPolynomial();
    Int lcm = 1;
    for (const auto& q : c_) {
      Int d = denominator(q);
      mpz_lcm(lcm.backend().data(), lcm.backend().data(), d.backend().data());
    }
    std::vector<Int> c;
    c.reserve(c_.size());
    for (const auto& q : c_) c.push_back(Int(numerator(q) * (lcm / denominator(q))));
    return IntPolynomial(std::move(c)).primitive_part();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

inline IntPolynomial IntPolynomial::squarefree_part() const {
  if (is_zero()) throw std::domain_error("squarefree part of zero polynomial");
  if (degree() == 0) return primitive_part();
  RatPoly g = RatPoly::gcd(RatPoly(*this), RatPoly(derivative()));
  if (g.degree() == 0) return primitive_part();
  return RatPoly::div_rem(RatPoly(*this), g).first.to_primitive_int();
}

/// Yun's squarefree decomposition: P = c * prod Q_i^i with the Q_i squarefree
/// and pairwise coprime. Only factors with deg >= 1 are returned.
inline std::vector<std::pair<IntPolynomial, unsigned>>
IntPolynomial::squarefree_decomposition() const {
  std::vector<std::pair<IntPolynomial, unsigned>> out;
  if (is_zero()) throw std::domain_error("squarefree decomposition of zero polynomial");
  if (degree() < 1) return out;
  RatPoly p(*this), dp = p.derivative();
  RatPoly a = RatPoly::gcd(p, dp);
  RatPoly b = RatPoly::div_rem(p, a).first;
  RatPoly c = RatPoly::div_rem(dp, a).first;
  RatPoly d = c - b.derivative();
  unsigned i = 1;
  while (b.degree() >= 1) {
    RatPoly q = RatPoly::gcd(b, d);
    if (q.degree() >= 1) out.emplace_back(q.to_primitive_int(), i);
    b = RatPoly::div_rem(b, q).first;
    c = RatPoly::div_rem(d, q).first;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

/// Canonical representative of a rational polynomial in Q[x]/(p): the
/// coefficient vector of the remainder mod p, length deg(p).
using RationalVector = std::vector<Rat>;

inline RationalVector reduce_mod(const RatPoly& q, const IntPolynomial& p) {
  if (p.degree() < 1) throw std::invalid_argument("reduce_mod: deg(p) must be >= 1");
  RatPoly rem = RatPoly::div_rem(q, RatPoly(p)).second;
  RationalVector v(static_cast<std::size_t>(p.degree()), Rat(0));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = rem.coeff(i);
  return v;
}

/// One multiply-by-x step in Q[x]/(p); used to walk the residues of x^n.
inline RationalVector residue_times_x(const RationalVector& v, const IntPolynomial& p) {
  std::size_t d = static_cast<std::size_t>(p.degree());
  if (v.size() != d) throw std::invalid_argument("residue_times_x: size mismatch");
  RationalVector w(d, Rat(0));
  const Rat top = v[d - 1];
  for (std::size_t i = d - 1; i > 0; --i) w[i] = v[i - 1];
  w[0] = 0;
  if (top != 0) {
    Rat lead(p.leading());
    for (std::size_t i = 0; i < d; ++i) w[i] -= top * Rat(p.coeff(i)) / lead;
  }
  return w;
}

/// Product of two residues in Q[x]/(p).
inline RationalVector residue_mul(const RationalVector& a, const RationalVector& b,
                                  const IntPolynomial& p) {
  return reduce_mod(RatPoly(std::vector<Rat>(a)) * RatPoly(std::vector<Rat>(b)), p);
}

/// Interval Horner evaluation; the result contains P(x) for every x in X.
inline Interval eval_poly_interval(const IntPolynomial& p, const Interval& x,
                                   mpfr_prec_t prec = 64) {
  if (prec < 16) throw std::invalid_argument("eval_poly_interval: prec must be >= 16");
  if (p.is_zero()) return Interval::point_long(0, prec);
  Interval acc = Interval::of_int(p.leading(), prec);
  for (int i = p.degree() - 1; i >= 0; --i)
    acc = acc.mul(x).add(Interval::of_int(p.coeff(static_cast<std::size_t>(i)), prec));
  return acc;
}

inline Interval eval_poly_interval(const RatPoly& p, const Interval& x,
                                   mpfr_prec_t prec = 64) {
  if (prec < 16) throw std::invalid_argument("eval_poly_interval: prec must be >= 16");
  if (p.is_zero()) return Interval::point_long(0, prec);
  Interval acc = Interval::of_rat(p.leading(), prec);
  for (int i = p.degree() - 1; i >= 0; --i)
    acc = acc.mul(x).add(Interval::of_rat(p.coeff(static_cast<std::size_t>(i)), prec));
  return acc;
}

}  // namespace bernoulli
