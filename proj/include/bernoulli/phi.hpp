#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "bernoulli/interval.hpp"

namespace bernoulli {

namespace detail {

inline double normal_pdf(double x) {
  static const double inv_sqrt_2pi = 0.3989422804014326779;
  return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

/// Integrand of the differential entropy of the two-bump mixture
/// f_s(x) = (phi(x-s) + phi(x+s)) / 2: returns -f ln f (positive, f < 1).
inline double mixture_neg_flnf(double x, double s) {
  double f = 0.5 * (normal_pdf(x - s) + normal_pdf(x + s));
  if (f <= 0) return 0.0;  // far tails underflow; covered by the tail bound
  return -f * std::log(f);
}

struct SimpsonResult {
  double value = 0;
  double err_estimate = 0;
  long evals = 0;
  bool budget_hit = false;
};

inline void adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                             double fa, double fm, double fb, double whole, double eps,
                             int depth, SimpsonResult& out) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  out.evals += 2;
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * eps) {
    out.value += left + right + delta / 15.0;
    out.err_estimate += std::abs(delta) / 15.0;
    return;
  }
  if (depth <= 0 || out.evals > 4'000'000) {
    out.value += left + right;
    out.err_estimate += std::abs(delta);
    out.budget_hit = true;
    return;
  }
  adaptive_simpson(f, a, m, fa, flm, fm, left, eps / 2, depth - 1, out);
  adaptive_simpson(f, m, b, fm, frm, fb, right, eps / 2, depth - 1, out);
}

inline SimpsonResult integrate(const std::function<double(double)>& f, double a, double b,
                               double eps) {
  SimpsonResult out;
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  out.evals = 3;
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  adaptive_simpson(f, a, b, fa, fm, fb, whole, eps, 48, out);
  return out;
}

}  // namespace detail

/// Entropy of a standard Gaussian, 0.5 * ln(2*pi*e).
inline double gaussian_entropy() { return 0.5 * std::log(2.0 * M_PI * M_E); }

struct MixtureEntropy {
  Interval value;     // enclosure of H((+-s) + G) in nats
  bool widened = false;  // quadrature budget hit; enclosure widened accordingly
};

/// Differential entropy of the symmetric two-point Gaussian mixture with
/// centers +-s. Adaptive Simpson on |x| <= s + 14; the remaining tail of
/// |f ln f| is below 1e-15 and is folded into the enclosure. For widely
/// separated bumps the exact two-bump limit ln 2 + H(G) is used, again with
/// the separation error folded in.
inline MixtureEntropy mixture_entropy(double s, double tol = 1e-12) {
  if (!(s >= 0) || !std::isfinite(s))
    throw std::invalid_argument("mixture_entropy: s must be finite and >= 0");
  const double tail = 1e-15;
  if (s >= 40.0) {
    // overlap between the bumps is below exp(-s^2/8); utterly negligible here
    double v = std::log(2.0) + gaussian_entropy();
    double e = 1e-14;
    return {Interval(BigFloat::of_double(v - e), BigFloat::of_double(v + e), 64), false};
  }
  auto f = [s](double x) { return detail::mixture_neg_flnf(x, s); };
  detail::SimpsonResult r = detail::integrate(f, 0.0, s + 14.0, tol * 0.25);
  double v = 2.0 * r.value;
  double e = 2.0 * (10.0 * r.err_estimate) + tail + 1e-14;
  return {Interval(BigFloat::of_double(v - e), BigFloat::of_double(v + e), 64),
          r.budget_hit};
}

/// Result of evaluating Phi(a) = sup_t (H(X0*t*a + G) - H(X0*t + G)).
/// phi_lower is certified (modulo the quadrature error model): its lower
/// endpoint is a true lower bound for Phi(a). phi_estimate is the heuristic
/// sup and is not certified.
struct PhiEvaluation {
  double a = 1;
  Interval phi_lower;
  double phi_estimate = 0;
  double t_star = 1;
  bool widened = false;
};

/// Evaluates Phi on a log-spaced grid t = e^u, u in [-6, 6] step 0.1, then
/// refines around the best grid point by golden-section. The certified lower
/// bound is the best single g(t) enclosure (sup >= any point value); the
/// clamp at 0 is sound because g(t) -> 0 as t -> 0.
inline PhiEvaluation phi(double a, double tol = 1e-12, double u_min = -6.0,
                         double u_max = 6.0, double u_step = 0.1) {
  if (!(a >= 1)) throw std::invalid_argument("phi: a must be >= 1");
  std::map<double, MixtureEntropy> memo;
  auto me = [&](double s) -> const MixtureEntropy& {
    auto it = memo.find(s);
    if (it == memo.end()) it = memo.emplace(s, mixture_entropy(s, tol)).first;
    return it->second;
  };
  PhiEvaluation out;
  out.a = a;
  bool widened = false;
  auto eval_g = [&](double t) {
    const MixtureEntropy &top = me(t * a), &bot = me(t);
    widened = widened || top.widened || bot.widened;
    return top.value.sub(bot.value);
  };
  Interval best = eval_g(std::exp(u_min));
  double best_t = std::exp(u_min);
  for (double u = u_min + u_step; u <= u_max + 1e-9; u += u_step) {
    double t = std::exp(u);
    Interval g = eval_g(t);
    if (g.lo() > best.lo()) {  // strict: ties keep the smaller t
      best = g;
      best_t = t;
    }
  }
  // golden-section refinement of the heuristic sup around the best grid cell;
  // correctness never depends on unimodality, only the estimate does
  double lo_u = std::log(best_t) - u_step, hi_u = std::log(best_t) + u_step;
  const double gr = 0.6180339887498949;
  double x1 = hi_u - gr * (hi_u - lo_u), x2 = lo_u + gr * (hi_u - lo_u);
  double f1 = eval_g(std::exp(x1)).mid_d(), f2 = eval_g(std::exp(x2)).mid_d();
  for (int it = 0; it < 40; ++it) {
    if (f1 < f2) {
      lo_u = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo_u + gr * (hi_u - lo_u);
      f2 = eval_g(std::exp(x2)).mid_d();
    } else {
      hi_u = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi_u - gr * (hi_u - lo_u);
      f1 = eval_g(std::exp(x1)).mid_d();
    }
  }
  double t_ref = std::exp(0.5 * (lo_u + hi_u));
  Interval g_ref = eval_g(t_ref);
  if (g_ref.lo() > best.lo()) {
    best = g_ref;
    best_t = t_ref;
  }
  out.t_star = best_t;
  out.phi_estimate = std::max(0.0, std::max(best.mid_d(), std::max(f1, f2)));
  BigFloat zero(64);
  mpfr_set_zero(zero.raw(), 1);
  BigFloat lo = best.lo() < zero ? zero : best.lo();
  BigFloat hi = best.hi() < zero ? zero : best.hi();
  out.phi_lower = Interval(std::move(lo), std::move(hi), 64);
  out.widened = widened;
  return out;
}

/// Certified threshold for Theorem-style use: an `a` with Phi(a) >= h,
/// found by doubling + bisection on the certified lower bounds of Phi
/// (monotone in a). c_of_h brackets the smallest such grid value.
struct ThresholdResult {
  double h = 0;
  Interval c_of_h;
  bool certified = false;
  PhiEvaluation phi_at_threshold;
};

inline ThresholdResult capital_c(double h, double tol = 1e-12, double a_cap = 1e9) {
  if (!(h > 0) || h >= std::log(2.0))
    throw std::invalid_argument(
        "capital_c: h must lie in (0, ln 2); Phi(a) <= ln 2 makes larger h unreachable");
  ThresholdResult out;
  out.h = h;
  double lo = 1.0, hi = 2.0;
  PhiEvaluation at_hi = phi(hi, tol);
  while (at_hi.phi_lower.lo_d() < h) {
    lo = hi;
    hi *= 2;
    if (hi > a_cap) {
      out.c_of_h = Interval(BigFloat::of_double(lo), BigFloat::of_double(hi), 64);
      out.certified = false;
      out.phi_at_threshold = at_hi;
      return out;
    }
    at_hi = phi(hi, tol);
  }
  for (int it = 0; it < 60 && hi - lo > 1e-6 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    PhiEvaluation at_mid = phi(mid, tol);
    if (at_mid.phi_lower.lo_d() >= h) {
      hi = mid;
      at_hi = at_mid;
    } else {
      lo = mid;
    }
  }
  out.c_of_h = Interval(BigFloat::of_double(lo), BigFloat::of_double(hi), 64);
  out.certified = true;
  out.phi_at_threshold = at_hi;
  return out;
}

}  // namespace bernoulli
