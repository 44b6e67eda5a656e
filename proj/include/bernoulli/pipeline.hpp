#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "bernoulli/entropy.hpp"
#include "bernoulli/interval.hpp"
#include "bernoulli/phi.hpp"
#include "bernoulli/roots.hpp"

namespace bernoulli {

enum class DimVerdict { DimOneCertified, DimLtOneCertified, Unresolved };

inline std::string verdict_name(DimVerdict v) {
  switch (v) {
    case DimVerdict::DimOneCertified: return "DIM_ONE_CERTIFIED";
    case DimVerdict::DimLtOneCertified: return "DIM_LT_ONE_CERTIFIED";
    case DimVerdict::Unresolved: return "UNRESOLVED";
  }
  return "?";
}

/// Pure decision rule: dim = 1 is certified when the Phi lower bound clears
/// ln(1/lambda); dim < 1 when the Fekete upper bound stays below it.
/// Estimates never drive the verdict.
inline DimVerdict verdict_from_windows(const Interval& h_lower, const Interval& h_upper,
                                       const Interval& loglam_inv) {
  if (!(h_lower.lo() < loglam_inv.hi())) return DimVerdict::DimOneCertified;
  if (h_upper.hi() < loglam_inv.lo()) return DimVerdict::DimLtOneCertified;
  return DimVerdict::Unresolved;
}

struct DimensionReport {
  IntPolynomial defining;
  RootBracket isolator;
  Interval loglam_inv;
  Interval mahler;
  Interval h_upper;  // Fekete bound, certified
  Interval h_lower;  // Phi(M) lower bound, certified modulo the quadrature model
  Interval dim_upper;
  double dim_estimate = 0;  // uncertified extrapolation
  DimVerdict verdict = DimVerdict::Unresolved;
  EntropySeries series;
  FeketeBound fekete;
  PhiEvaluation phi_eval;
  std::vector<std::string> flags;
};

inline const char* kPhiCaveat =
    "h_lower folds in the quadrature error model: adaptive-Simpson tolerance plus the"
    " 1e-15 analytic tail bound; certification is modulo that model";

inline DimensionReport dimension_report(const AlgebraicNumber& lambda, long n_max = 24,
                                        mpfr_prec_t prec = 128,
                                        std::size_t table_cap = 50'000'000) {
  DimensionReport rep;
  rep.defining = lambda.defining();
  rep.isolator = lambda.isolator();
  Interval lam = lambda.enclosure(prec);
  if (!(lam.lo().sign() > 0) || !(lam.hi() < BigFloat::of_long(1)))
    throw std::invalid_argument("dimension_report: lambda must lie inside (0, 1)");
  rep.loglam_inv = -lam.log();
  rep.mahler = mahler_measure(lambda.defining(), prec);

  rep.series = entropy_series(lambda, n_max, IndexFilter::All, table_cap, prec);
  if (rep.series.truncated) rep.flags.push_back("series-truncated-at-table-cap");
  rep.fekete = garsia_upper_bound(rep.series, prec);
  rep.h_upper = rep.fekete.value;

  double a = std::max(1.0, rep.mahler.lo_d());
  rep.phi_eval = phi(a);
  rep.h_lower = rep.phi_eval.phi_lower;
  if (rep.phi_eval.widened) rep.flags.push_back("phi-quadrature-budget-widened");

  // dim_upper = min(1, h_upper / ln(1/lambda)), outward rounded. When the
  // series stayed collision-free and lambda = p/(2p), both sides are exactly
  // ln 2 and the ratio is exactly 1.
  bool exact_one = false;
  if (rep.fekete.exactly_ln2 && lambda.is_rational()) {
    Rat v = lambda.rational_value();
    exact_one = denominator(v) == 2 * numerator(v);
  }
  if (exact_one) {
    rep.dim_upper = Interval::point_long(1, prec);
  } else {
    Interval ratio = rep.h_upper.div(rep.loglam_inv);
    rep.dim_upper = imin(Interval::point_long(1, prec), ratio);
  }

  if (rep.series.entries.size() >= 4) {
    Estimate est = garsia_estimate(rep.series);
    rep.dim_estimate = std::min(1.0, est.value / rep.loglam_inv.mid_d());
  } else {
    rep.dim_estimate = std::min(1.0, rep.h_upper.mid_d() / rep.loglam_inv.mid_d());
  }

  rep.verdict = verdict_from_windows(rep.h_lower, rep.h_upper, rep.loglam_inv);
  if (rep.verdict == DimVerdict::DimOneCertified) rep.flags.push_back(kPhiCaveat);
  return rep;
}

/// Check of the entropy-vs-Mahler inequality window
/// c min(ln 2, ln M) <= h <= min(ln 2, ln M) with the reported c = 0.44.
/// The h window combines every sound bound: Phi(M) from below, the Fekete
/// bound and the right-hand side from above. The c = 0.44 comparison is
/// informational only (the constant itself is not rigorous).
struct BVCheckReport {
  IntPolynomial defining;
  double c = 0.44;
  Interval rhs_upper;  // min(ln 2, ln M)
  Interval lhs;        // c * rhs
  Interval fekete;     // raw min H_N / N
  Interval h_lower, h_upper;       // h window; h_upper = min(fekete, rhs)
  bool upper_violation = false;    // certified h_lower > rhs: would indicate a bug
  bool windows_ok = false;         // h_lower and h_upper do not cross
  bool lower_claim_consistent = false;  // the 0.44 claim not refuted by the window
  bool consistent = false;
};

inline BVCheckReport bv_inequality_check(const AlgebraicNumber& lambda, long n_max = 24,
                                         mpfr_prec_t prec = 128,
                                         std::size_t table_cap = 50'000'000) {
  BVCheckReport rep;
  rep.defining = lambda.defining();
  Interval m = mahler_measure(lambda.defining(), prec);
  // M > 1 for algebraic lambda in (0,1); clamp the enclosure before log
  Interval m_clamped = imax(m, Interval::point_long(1, prec));
  rep.rhs_upper = imin(Interval::ln2(prec), m_clamped.log());
  rep.lhs = rep.rhs_upper.mul(Interval::of_rat(Rat(11, 25), prec));

  EntropySeries series = entropy_series(lambda, n_max, IndexFilter::All, table_cap, prec);
  rep.fekete = garsia_upper_bound(series, prec).value;
  rep.h_upper = imin(rep.fekete, rep.rhs_upper);
  rep.h_lower = phi(std::max(1.0, m.lo_d())).phi_lower;

  rep.upper_violation = rep.h_lower.lo() > rep.rhs_upper.hi();
  rep.windows_ok = !(rep.h_lower.lo() > rep.h_upper.hi());
  rep.lower_claim_consistent = !(rep.h_upper.hi() < rep.lhs.lo());
  rep.consistent = !rep.upper_violation && rep.windows_ok;
  return rep;
}

/// Monte-Carlo box-entropy estimate of the dimension: truncated sums are
/// histogrammed at resolution 2^-scale_exponent over the normalized support
/// and the plug-in entropy (Miller-Madow corrected) is divided by ln of the
/// resolution. UNCERTIFIED by construction; the bootstrap spread is reported
/// instead of an error bar.
inline Estimate empirical_box_entropy(const Interval& lambda_numeric, int n,
                                      long sample_count, int scale_exponent,
                                      std::uint64_t seed) {
  if (sample_count < 10'000)
    throw std::invalid_argument("empirical_box_entropy: need at least 1e4 samples");
  if (scale_exponent < 1 || scale_exponent > 26)
    throw std::invalid_argument("empirical_box_entropy: scale_exponent must be 1..26");
  if (n < 1 || n > 62) throw std::invalid_argument("empirical_box_entropy: n must be 1..62");
  double lam = lambda_numeric.mid_d();
  if (!(lam > 0) || !(lam < 1))
    throw std::invalid_argument("empirical_box_entropy: lambda must lie inside (0, 1)");
  double r = std::ldexp(1.0, -scale_exponent);
  double range = 2.0 * (1.0 - std::pow(lam, n)) / (1.0 - lam);
  double trunc = std::pow(lam, n) / (1.0 - lam) / range;  // relative to the support
  if (!(trunc < 0.5 * r)) {
    int n_min = n;
    while (n_min <= 62) {
      double t = std::pow(lam, n_min) / (1.0 - lam) /
                 (2.0 * (1.0 - std::pow(lam, n_min)) / (1.0 - lam));
      if (t < 0.5 * r) break;
      ++n_min;
    }
    throw std::invalid_argument(
        "empirical_box_entropy: scale 2^-" + std::to_string(scale_exponent) +
        " is below the truncation error; minimal admissible N = " + std::to_string(n_min));
  }

  std::vector<double> pow_lam(static_cast<std::size_t>(n));
  double p = 1.0;
  for (int i = 0; i < n; ++i) {
    pow_lam[static_cast<std::size_t>(i)] = p;
    p *= lam;
  }
  double half_range = (1.0 - std::pow(lam, n)) / (1.0 - lam);
  long bins = 1L << scale_exponent;
  std::vector<long> hist(static_cast<std::size_t>(bins), 0);
  std::mt19937_64 rng(seed);
  for (long s = 0; s < sample_count; ++s) {
    std::uint64_t bits = rng();
    double v = 0;
    for (int i = 0; i < n; ++i)
      v += (bits >> i) & 1 ? pow_lam[static_cast<std::size_t>(i)]
                           : -pow_lam[static_cast<std::size_t>(i)];
    double u = (v + half_range) / (2.0 * half_range);
    long b = std::min(bins - 1, std::max(0L, static_cast<long>(u * bins)));
    ++hist[static_cast<std::size_t>(b)];
  }
  auto plug_in = [&](const std::vector<long>& h, long total) {
    double H = 0;
    long occupied = 0;
    for (long c : h) {
      if (c == 0) continue;
      ++occupied;
      double q = static_cast<double>(c) / total;
      H -= q * std::log(q);
    }
    H += static_cast<double>(occupied - 1) / (2.0 * total);  // Miller-Madow
    return H;
  };
  double denom = scale_exponent * std::log(2.0);
  double estimate = plug_in(hist, sample_count) / denom;

  // bootstrap over the histogram (multinomial resampling)
  std::vector<double> cum(static_cast<std::size_t>(bins));
  double acc = 0;
  for (long b = 0; b < bins; ++b) {
    acc += static_cast<double>(hist[static_cast<std::size_t>(b)]) / sample_count;
    cum[static_cast<std::size_t>(b)] = acc;
  }
  const int B = 32;
  double mean = 0, m2 = 0;
  std::vector<long> boot(static_cast<std::size_t>(bins));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < B; ++rep) {
    std::fill(boot.begin(), boot.end(), 0L);
    for (long s = 0; s < sample_count; ++s) {
      double u = unif(rng);
      auto it = std::lower_bound(cum.begin(), cum.end(), u);
      std::size_t b = std::min(static_cast<std::size_t>(it - cum.begin()),
                               static_cast<std::size_t>(bins - 1));
      ++boot[b];
    }
    double e = plug_in(boot, sample_count) / denom;
    double d = e - mean;
    mean += d / (rep + 1);
    m2 += d * (e - mean);
  }
  double spread = std::sqrt(m2 / (B - 1));
  return {estimate, spread, false};
}

}  // namespace bernoulli
