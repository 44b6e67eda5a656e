#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "bernoulli/interval.hpp"
#include "bernoulli/numbers.hpp"
#include "bernoulli/polynomial.hpp"
#include "bernoulli/roots.hpp"

namespace bernoulli {

/// Coefficient class for the searches: FULL is all {-1,0,1} vectors;
/// Q_TRIMMED forces coefficient 0 at every index n with 3 | (n - 2).
struct CoeffClass {
  enum Kind { Full, QTrimmed } kind = Full;

  bool allows(int idx) const { return kind == Full || (idx - 2) % 3 != 0; }
  std::string name() const { return kind == Full ? "FULL" : "Q_TRIMMED"; }
  static CoeffClass parse(std::string_view s) {
    if (s == "full" || s == "FULL") return {Full};
    if (s == "q" || s == "Q" || s == "Q_TRIMMED") return {QTrimmed};
    throw std::invalid_argument("coefficient class must be 'full' or 'q'");
  }
};

enum class SearchMode { Pruned, Exhaustive };

/// Runs fn(i) for i in [0, count) across up to `jobs` threads. Results must
/// be written into caller-owned slots indexed by i, so the reduction order
/// (and therefore all output) is independent of the thread count.
inline void parallel_for_index(std::size_t count, int jobs,
                               const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += n_threads) fn(i);
    });
  for (auto& th : pool) th.join();
}

struct SearchResult {
  Interval min_value;
  IntPolynomial argmin;
  std::uint64_t nodes = 0;
  SearchMode mode = SearchMode::Pruned;
  bool excluded_zero = false;  // exact zeros of the defining polynomial skipped
  std::uint64_t zero_hits = 0;
  bool budget_hit = false;
};

namespace detail {

struct MinSearch {
  const std::vector<Interval>* powers;  // lambda^0 .. lambda^n
  const std::vector<BigFloat>* tails;   // tails[j] >= sum_{i>j allowed} lambda.hi^i
  CoeffClass cls;
  int n;
  SearchMode mode;
  mpfr_prec_t prec;
  std::uint64_t budget;

  // zero exclusion (only when searching at an algebraic point)
  const AlgebraicNumber* xi = nullptr;

  std::uint64_t nodes = 0;
  std::uint64_t zero_hits = 0;
  bool budget_hit = false;
  bool have_best = false;
  Interval best_value;
  std::vector<int> best_coeffs;
  std::vector<int> coeffs;

  /// Exact test for P(xi) == 0: xi is a root of gcd(P, defining) iff the gcd
  /// has a root inside the isolating bracket.
  bool is_exact_zero(const IntPolynomial& p) const {
    if (!xi) return false;
    RatPoly g = RatPoly::gcd(RatPoly(p), RatPoly(xi->defining()));
    if (g.degree() < 1) return false;
    IntPolynomial gi = g.to_primitive_int();
    const RootBracket& iso = xi->isolator();
    if (iso.exact()) return gi.eval_rat(iso.lo) == 0;
    SturmSequence chain(gi.squarefree_part());
    return chain.count_open(iso.lo, iso.hi) == 1;
  }

  /// Recomputes |P(xi)| at escalating precision until the sign is resolved.
  Interval resolve_nonzero(const IntPolynomial& p) const {
    for (mpfr_prec_t work = prec * 2; work <= 1 << 14; work *= 2) {
      Interval v = eval_poly_interval(p, xi->enclosure(work), work).abs();
      if (v.lo().sign() > 0) return v;
    }
    throw std::runtime_error("min_abs_value: could not separate a value from zero");
  }

  void leaf(const Interval& partial) {
    bool all_zero = true;
    for (int c : coeffs)
      if (c != 0) {
        all_zero = false;
        break;
      }
    if (all_zero) return;
    Interval v = partial.abs();
    if (v.contains_zero() && xi) {
      std::vector<Int> ic(coeffs.begin(), coeffs.end());
      IntPolynomial p{std::move(ic)};
      if (is_exact_zero(p)) {
        ++zero_hits;
        return;
      }
      v = resolve_nonzero(p);
    }
    bool better = false;
    if (!have_best) {
      better = true;
    } else if (v.hi() < best_value.hi()) {
      better = true;
    } else if (!(best_value.hi() < v.hi()) && v.lo() < best_value.lo()) {
      better = true;
    }
    if (better) {
      have_best = true;
      best_value = v;
      best_coeffs = coeffs;
    }
  }

  void dfs(int j, const Interval& partial) {
    if (budget && nodes >= budget) {
      budget_hit = true;
      return;
    }
    ++nodes;
    if (j > n) {
      leaf(partial);
      return;
    }
    for (int a : {-1, 0, 1}) {
      if (a != 0 && !cls.allows(j)) continue;
      Interval next = a == 0 ? partial
                             : (a == 1 ? partial.add((*powers)[static_cast<std::size_t>(j)])
                                       : partial.sub((*powers)[static_cast<std::size_t>(j)]));
      coeffs[static_cast<std::size_t>(j)] = a;
      bool prune = false;
      if (mode == SearchMode::Pruned && have_best) {
        BigFloat lb = bf_sub(next.abs().lo(), (*tails)[static_cast<std::size_t>(j)], prec,
                             MPFR_RNDD);
        prune = lb > best_value.hi();
      }
      if (!prune) dfs(j + 1, next);
      if (a == 0 && !cls.allows(j)) break;  // only the forced zero branch exists
    }
    coeffs[static_cast<std::size_t>(j)] = 0;
  }
};

}  // namespace detail

/// Minimum of |P(lambda)| over nonzero class polynomials of degree <= n.
/// PRUNED keeps partial sums as intervals and discards a prefix when no
/// completion can return below the incumbent (tail = sum of remaining
/// |lambda|^i); EXHAUSTIVE walks the full tree. Both visit coefficient
/// vectors in ascending-degree lexicographic order, so ties resolve to the
/// lexicographically smallest argmin in both modes.
inline SearchResult min_abs_value(const Interval& lambda, int n, CoeffClass cls,
                                  SearchMode mode = SearchMode::Pruned,
                                  std::uint64_t budget = 0,
                                  const AlgebraicNumber* xi = nullptr,
                                  mpfr_prec_t prec = 128) {
  if (n < 0) throw std::invalid_argument("min_abs_value: n must be >= 0");
  if (!(lambda.lo().sign() > 0) || !(lambda.hi() < BigFloat::of_long(1)))
    throw std::invalid_argument("min_abs_value: lambda must lie inside (0, 1)");
  std::vector<Interval> powers;
  powers.reserve(static_cast<std::size_t>(n) + 1);
  powers.push_back(Interval::point_long(1, prec));
  for (int i = 1; i <= n; ++i) powers.push_back(powers.back().mul(lambda));
  // tails[j] = upper bound of sum_{i > j, class-allowed} lambda.hi^i
  std::vector<BigFloat> tails(static_cast<std::size_t>(n) + 1, BigFloat(prec));
  {
    BigFloat acc(prec);
    mpfr_set_zero(acc.raw(), 1);
    for (int j = n; j >= 0; --j) {
      tails[static_cast<std::size_t>(j)] = acc;
      if (cls.allows(j)) acc = bf_add(acc, powers[static_cast<std::size_t>(j)].hi(), prec, MPFR_RNDU);
    }
  }
  detail::MinSearch s;
  s.powers = &powers;
  s.tails = &tails;
  s.cls = cls;
  s.n = n;
  s.mode = mode;
  s.prec = prec;
  s.budget = budget;
  s.xi = xi;
  s.coeffs.assign(static_cast<std::size_t>(n) + 1, 0);
  s.dfs(0, Interval::point_long(0, prec));
  if (!s.have_best) throw std::logic_error("min_abs_value: empty candidate set");
  SearchResult out;
  out.min_value = s.best_value;
  out.argmin = IntPolynomial(std::vector<Int>(s.best_coeffs.begin(), s.best_coeffs.end()));
  out.nodes = s.nodes;
  out.mode = mode;
  out.excluded_zero = xi != nullptr;
  out.zero_hits = s.zero_hits;
  out.budget_hit = s.budget_hit;
  return out;
}

/// One row of the Garsia-bound verification: the exact class minimum versus
/// the bound M^-n (n+1)^(1-d).
struct GarsiaRow {
  int n = 0;
  Interval min_nonzero;
  Interval bound;
  std::uint64_t zero_excluded = 0;
  bool violation = false;   // certified: min < bound
  bool confirmed = false;   // certified: min >= bound
};

struct GarsiaBoundReport {
  IntPolynomial defining;
  int degree = 0;
  Interval mahler;
  std::vector<GarsiaRow> rows;
  bool any_violation = false;
  bool identity_checked = false;
  bool identity_ok = false;
  bool partial = false;  // a search hit its budget
};

/// Spot check of the integrality identity behind the bound: lead^n times the
/// product of P over all conjugate root disks must enclose a real integer of
/// modulus >= 1.
inline bool proof_identity_check(const IntPolynomial& defining, const IntPolynomial& p, int n,
                                 mpfr_prec_t prec = 192, double tol = 1e-6) {
  auto disks = complex_root_disks(defining, prec);
  CBox prod{Interval::of_int(defining.leading(), prec).pow_ui(static_cast<unsigned long>(n)),
            Interval::point_long(0, prec)};
  for (const auto& d : disks) {
    // rectangle enclosure of the disk
    CBox z{Interval(bf_sub(d.center_re, d.radius, prec, MPFR_RNDD),
                    bf_add(d.center_re, d.radius, prec, MPFR_RNDU), prec),
           Interval(bf_sub(d.center_im, d.radius, prec, MPFR_RNDD),
                    bf_add(d.center_im, d.radius, prec, MPFR_RNDU), prec)};
    prod = prod.mul(eval_poly_cbox(p, z, prec));
  }
  double im_lo = prod.im.lo_d(), im_hi = prod.im.hi_d();
  if (im_lo > tol || im_hi < -tol) return false;
  double re_lo = prod.re.lo_d() - tol, re_hi = prod.re.hi_d() + tol;
  double k_lo = std::ceil(re_lo), k_hi = std::floor(re_hi);
  if (k_lo > k_hi) return false;
  // need some integer of modulus >= 1 in range
  return k_hi >= 1.0 || k_lo <= -1.0;
}

/// Verifies |P(xi)| >= M(xi)^-n (n+1)^(1-d) for every nonzero {-1,0,1}
/// polynomial of degree <= n, for n = 0..n_max. Exact zeros (multiples of the
/// minimal polynomial) are excluded via the gcd test, matching the theorem's
/// P(lambda) != 0 hypothesis.
inline GarsiaBoundReport verify_garsia_bound(const AlgebraicNumber& xi, int n_max,
                                             mpfr_prec_t prec = 192,
                                             std::uint64_t budget_per_n = 0,
                                             bool check_identity = true) {
  GarsiaBoundReport rep;
  rep.defining = xi.defining();
  rep.degree = xi.degree();
  rep.mahler = mahler_measure(xi.defining(), prec);
  Interval lam = xi.enclosure(prec);
  int d = xi.degree();
  for (int n = 0; n <= n_max; ++n) {
    SearchResult sr = min_abs_value(lam, n, {CoeffClass::Full}, SearchMode::Pruned,
                                    budget_per_n, &xi, prec);
    GarsiaRow row;
    row.n = n;
    row.min_nonzero = sr.min_value;
    Interval mpow = rep.mahler.pow_ui(static_cast<unsigned long>(n));
    Rat np = Rat(1) / Rat(pow_int(Int(n + 1), static_cast<unsigned long>(d - 1)));
    row.bound = Interval::point_long(1, prec).div(mpow).mul(Interval::of_rat(np, prec));
    row.zero_excluded = sr.zero_hits;
    row.violation = sr.min_value.hi() < row.bound.lo();
    row.confirmed = !(sr.min_value.lo() < row.bound.hi());
    rep.partial = rep.partial || sr.budget_hit;
    rep.any_violation = rep.any_violation || row.violation;
    if (check_identity && n == n_max) {
      rep.identity_checked = true;
      rep.identity_ok = proof_identity_check(xi.defining(), sr.argmin, n, prec);
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// --- separation check (annulus sampling around an algebraic point) ---------

enum class Verdict { Pass, Fail, Inconclusive };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

struct SeparationSample {
  int side = 0;  // -1 or +1
  double radius = 0;
  double lambda_mid = 0;
  Interval min_value;
  Verdict verdict = Verdict::Inconclusive;
};

struct SeparationReport {
  IntPolynomial defining;
  int degree = 0;
  int n = 0;
  Interval mahler;
  CoeffClass cls;
  Interval r_inner, r_outer;  // enclosures of (5M)^-n and (5M)^(-n+1)
  Interval threshold;         // enclosure of (20M)^-n
  std::vector<SeparationSample> samples;
  Verdict verdict = Verdict::Inconclusive;
};

namespace detail {

/// Exact comparison xi vs 2^(-p/q) via xi^q vs 2^-p on the rational bracket;
/// refines the bracket until the comparison resolves (or gives up: 0).
inline int cmp_pow2(const AlgebraicNumber& xi, unsigned q, unsigned p) {
  Rat rhs = Rat(1) / Rat(pow_int(2, p));
  RootBracket b = xi.isolator();
  for (int iter = 0; iter < 400; ++iter) {
    Rat lo_q = pow_rat(b.lo, static_cast<long>(q));
    Rat hi_q = pow_rat(b.hi, static_cast<long>(q));
    if (lo_q > rhs) return 1;
    if (hi_q < rhs) return -1;
    if (b.exact()) return 0;
    b = refine_bracket(xi.defining(), b, b.width() / 2);
  }
  return 0;
}

}  // namespace detail

/// Samples the annulus (5M)^-n <= |lambda - xi| <= (5M)^(-n+1) on both sides
/// of xi and checks the class minimum of |P(lambda)| against (20M)^-n.
/// Guards: xi must lie in (1/2, 2^(-1/2)) and n must exceed 10 d log d.
/// Class rule: FULL when xi <= 2^(-2/3), else Q_TRIMMED.
inline SeparationReport separation_check(const AlgebraicNumber& xi, int n,
                                         int sample_count = 8, mpfr_prec_t prec = 256,
                                         std::uint64_t budget = 0, int jobs = 1) {
  int d = xi.degree();
  double threshold_n = 10.0 * d * std::log(static_cast<double>(d));  // 0 for d = 1
  if (!(static_cast<double>(n) > threshold_n))
    throw std::invalid_argument("separation_check: requires n > 10 d log d = " +
                                std::to_string(threshold_n) + " (d = " + std::to_string(d) +
                                "); got n = " + std::to_string(n));
  if (sample_count < 2) throw std::invalid_argument("separation_check: need >= 2 samples");
  // range guard: 1/2 < xi < 2^(-1/2), decided exactly on rational brackets
  {
    RootBracket b = xi.refined(Rat(1, 1000000));
    if (!(b.lo > Rat(1, 2)))
      throw std::invalid_argument("separation_check: xi must exceed 1/2");
    if (detail::cmp_pow2(xi, 2, 1) >= 0)
      throw std::invalid_argument("separation_check: xi must be below 2^(-1/2)");
  }
  SeparationReport rep;
  rep.defining = xi.defining();
  rep.degree = d;
  rep.n = n;
  rep.mahler = mahler_measure(xi.defining(), prec);
  rep.cls = detail::cmp_pow2(xi, 3, 2) <= 0 ? CoeffClass{CoeffClass::Full}
                                            : CoeffClass{CoeffClass::QTrimmed};

  Interval five_m = rep.mahler.mul(Interval::point_long(5, prec));
  Interval inv = Interval::point_long(1, prec).div(five_m.pow_ui(static_cast<unsigned long>(n)));
  rep.r_inner = inv;
  rep.r_outer = inv.mul(five_m);
  Interval twenty_m = rep.mahler.mul(Interval::point_long(20, prec));
  rep.threshold =
      Interval::point_long(1, prec).div(twenty_m.pow_ui(static_cast<unsigned long>(n)));

  // radii certainly inside the annulus: [r_inner.hi, r_outer.lo]
  BigFloat r_lo = rep.r_inner.hi(), r_hi = rep.r_outer.lo();
  if (!(r_lo < r_hi)) throw std::runtime_error("separation_check: degenerate annulus");
  Interval lam_encl = xi.enclosure(prec);
  rep.samples.resize(static_cast<std::size_t>(2 * sample_count));
  parallel_for_index(rep.samples.size(), jobs, [&](std::size_t idx) {
    int side = idx < static_cast<std::size_t>(sample_count) ? -1 : 1;
    int j = static_cast<int>(idx % static_cast<std::size_t>(sample_count));
    // Chebyshev-spaced radii including both endpoints
    double theta = M_PI * static_cast<double>(j) / (sample_count - 1);
    double w = 0.5 * (1.0 - std::cos(theta));
    BigFloat span = bf_sub(r_hi, r_lo, prec, MPFR_RNDN);
    BigFloat r(prec);
    mpfr_mul_d(r.raw(), span.raw(), w, MPFR_RNDN);
    r = bf_add(r_lo, r, prec, MPFR_RNDN);
    if (r < r_lo) r = r_lo;
    if (r > r_hi) r = r_hi;
    Interval rad(r, r, prec);
    Interval lam = side > 0 ? lam_encl.add(rad) : lam_encl.sub(rad);
    SearchResult sr = min_abs_value(lam, n, rep.cls, SearchMode::Pruned, budget, nullptr, prec);
    SeparationSample smp;
    smp.side = side;
    smp.radius = r.to_double();
    smp.lambda_mid = lam.mid_d();
    smp.min_value = sr.min_value;
    if (sr.min_value.lo() > rep.threshold.hi())
      smp.verdict = Verdict::Pass;
    else if (sr.min_value.hi() < rep.threshold.lo())
      smp.verdict = Verdict::Fail;
    else
      smp.verdict = Verdict::Inconclusive;
    rep.samples[idx] = std::move(smp);
  });
  bool all_pass = true, any_fail = false;
  for (const auto& smp : rep.samples) {
    all_pass = all_pass && smp.verdict == Verdict::Pass;
    any_fail = any_fail || smp.verdict == Verdict::Fail;
  }
  rep.verdict = any_fail ? Verdict::Fail : (all_pass ? Verdict::Pass : Verdict::Inconclusive);
  return rep;
}

// --- root atlas -------------------------------------------------------------

struct AtlasEntry {
  RootBracket root;
  IntPolynomial source;  // smallest-degree source polynomial seen for this root
};

struct RootAtlas {
  int n_max = 0;
  Rat region_lo, region_hi;
  std::vector<AtlasEntry> roots;  // sorted ascending, pairwise distinct
  long polynomial_count = 0;
  Interval min_gap;
  std::size_t gap_left = 0;  // index of the left root of the minimal pair
  double empirical_c = 0;    // gap^(-1/n_max)
  mpfr_prec_t prec = 128;
};

namespace detail {

/// Exact equality test for two isolated algebraic numbers with overlapping
/// brackets: they coincide iff gcd(p1, p2) has exactly one root in each
/// bracket and in the hull.
inline bool same_algebraic_root(const IntPolynomial& p1, const RootBracket& b1,
                                const IntPolynomial& p2, const RootBracket& b2) {
  RatPoly g = RatPoly::gcd(RatPoly(p1), RatPoly(p2));
  if (g.degree() < 1) return false;
  IntPolynomial gi = g.to_primitive_int().squarefree_part();
  auto count = [&](const Rat& lo, const Rat& hi) {
    if (lo == hi) return gi.eval_rat(lo) == 0 ? 1 : 0;
    SturmSequence chain(gi);
    int c = chain.count_open(lo, hi);
    if (gi.eval_rat(hi) == 0) ++c;  // closed bracket endpoints
    if (gi.eval_rat(lo) == 0) ++c;
    return c;
  };
  if (count(b1.lo, b1.hi) != 1 || count(b2.lo, b2.hi) != 1) return false;
  Rat lo = std::min(b1.lo, b2.lo), hi = std::max(b1.hi, b2.hi);
  return count(lo, hi) == 1;
}

}  // namespace detail

/// Enumerates all {-1,0,1} polynomials of degree <= n_max normalized to
/// constant term 1 (the paper's +-P/x^k reduction), isolates their real roots
/// in the open region, deduplicates exact coincidences, and reports the
/// sorted roots with the minimal pairwise gap.
inline RootAtlas root_atlas(int n_max, const Rat& region_lo, const Rat& region_hi,
                            mpfr_prec_t prec = 128, int jobs = 1) {
  if (n_max < 1 || n_max > 12)
    throw std::invalid_argument("root_atlas: n_max must be in 1..12");
  if (!(region_lo > 0) || !(region_hi > region_lo) || region_hi > 1)
    throw std::invalid_argument("root_atlas: region must satisfy 0 < lo < hi <= 1");
  RootAtlas atlas;
  atlas.n_max = n_max;
  atlas.region_lo = region_lo;
  atlas.region_hi = region_hi;
  atlas.prec = prec;
  Rat target = Rat(1) / Rat(pow_int(2, static_cast<unsigned long>(prec)));

  long total = 1;
  for (int i = 0; i < n_max; ++i) total *= 3;
  atlas.polynomial_count = total;
  std::vector<std::vector<AtlasEntry>> per_code(static_cast<std::size_t>(total));
  parallel_for_index(static_cast<std::size_t>(total), jobs, [&](std::size_t code) {
    std::vector<int> coeff(static_cast<std::size_t>(n_max) + 1, 0);
    coeff[0] = 1;
    std::size_t c = code;
    for (int i = 1; i <= n_max; ++i) {
      coeff[static_cast<std::size_t>(i)] = static_cast<int>(c % 3) - 1;
      c /= 3;
    }
    IntPolynomial p{std::vector<Int>(coeff.begin(), coeff.end())};
    if (p.degree() < 1) return;
    IntPolynomial s = p.squarefree_part();
    for (const auto& bracket : isolate_real_roots_in(s, region_lo, region_hi, target))
      per_code[code].push_back({refine_bracket(s, bracket, target), s});
  });
  std::vector<AtlasEntry> entries;
  for (auto& v : per_code)
    for (auto& e : v) entries.push_back(std::move(e));
  std::sort(entries.begin(), entries.end(), [](const AtlasEntry& a, const AtlasEntry& b) {
    if (a.root.lo != b.root.lo) return a.root.lo < b.root.lo;
    return a.root.hi < b.root.hi;
  });
  // deduplicate exact coincidences; separate near-coincidences by refinement
  std::vector<AtlasEntry> dedup;
  for (auto& e : entries) {
    if (!dedup.empty()) {
      AtlasEntry& last = dedup.back();
      bool resolved = false;
      while (!resolved) {
        if (e.root.lo > last.root.hi) {
          resolved = true;  // disjoint: distinct roots
        } else if (detail::same_algebraic_root(last.source, last.root, e.source, e.root)) {
          if (e.source.degree() < last.source.degree()) last = e;  // keep smaller degree
          resolved = true;
          e.source = IntPolynomial();  // mark merged
        } else {
          last.root = refine_bracket(last.source, last.root, last.root.width() / 4);
          e.root = refine_bracket(e.source, e.root, e.root.width() / 4);
          if (e.root.lo > last.root.hi || e.root.hi < last.root.lo) resolved = true;
        }
      }
      if (e.source.is_zero()) continue;
      if (e.root.hi < last.root.lo) std::swap(e, last);  // keep sort order
    }
    dedup.push_back(std::move(e));
  }
  atlas.roots = std::move(dedup);

  if (atlas.roots.size() >= 2) {
    Rat best_lo, best_hi;
    bool first = true;
    for (std::size_t i = 0; i + 1 < atlas.roots.size(); ++i) {
      Rat glo = atlas.roots[i + 1].root.lo - atlas.roots[i].root.hi;
      Rat ghi = atlas.roots[i + 1].root.hi - atlas.roots[i].root.lo;
      if (first || glo < best_lo) {
        first = false;
        best_lo = glo;
        best_hi = ghi;
        atlas.gap_left = i;
      }
    }
    if (best_lo < 0) best_lo = 0;
    atlas.min_gap = Interval::of_rats(best_lo, best_hi, prec);
    double mid = atlas.min_gap.mid_d();
    if (mid > 0) atlas.empirical_c = std::pow(mid, -1.0 / n_max);
  }
  return atlas;
}

}  // namespace bernoulli
