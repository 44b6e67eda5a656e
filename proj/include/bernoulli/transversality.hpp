#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "bernoulli/interval.hpp"
#include "bernoulli/numbers.hpp"

namespace bernoulli {

/// Power-series class 1 + sum_{n in A} a_n x^n with a_n in {-1, 0, 1}:
/// FULL admits every n >= 1; SKIP(i) admits exactly the n with 3 not
/// dividing (n - i).
struct SeriesClass {
  enum Kind { Full, Skip1, Skip2 } kind = Full;

  bool allows(long n) const {
    if (n < 1) return false;
    switch (kind) {
      case Full: return true;
      case Skip1: return (n - 1) % 3 != 0;
      case Skip2: return (n - 2) % 3 != 0;
    }
    return false;
  }
  std::string name() const {
    switch (kind) {
      case Full: return "P";
      case Skip1: return "P1";
      case Skip2: return "P2";
    }
    return "?";
  }
  static SeriesClass parse(std::string_view s) {
    if (s == "P" || s == "p") return {Full};
    if (s == "P1" || s == "p1") return {Skip1};
    if (s == "P2" || s == "p2") return {Skip2};
    throw std::invalid_argument("series class must be P, P1 or P2");
  }
};

// --- fast directed-rounding double intervals -------------------------------
//
// Every elementary double operation is correctly rounded to within half an
// ulp, so stepping the result one ulp outward yields a sound enclosure.

namespace dint {

inline double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }
inline double dn(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double add_up(double a, double b) { return up(a + b); }
inline double add_dn(double a, double b) { return dn(a + b); }
inline double sub_up(double a, double b) { return up(a - b); }
inline double sub_dn(double a, double b) { return dn(a - b); }
inline double mul_up(double a, double b) { return up(a * b); }
inline double mul_dn(double a, double b) { return dn(a * b); }
inline double div_up(double a, double b) { return up(a / b); }
inline double div_dn(double a, double b) { return dn(a / b); }

struct I {
  double lo, hi;
  I add(I o) const { return {add_dn(lo, o.lo), add_up(hi, o.hi)}; }
  I sub(I o) const { return {sub_dn(lo, o.hi), sub_up(hi, o.lo)}; }
  I neg() const { return {-hi, -lo}; }
};

inline double pow_up(double y, long n) {
  double r = 1.0;
  for (long i = 0; i < n; ++i) r = mul_up(r, y);
  return r;
}
inline double pow_dn(double y, long n) {
  double r = 1.0;
  for (long i = 0; i < n; ++i) r = std::max(0.0, mul_dn(r, y));
  return r;
}

}  // namespace dint

namespace detail {

/// Upper bound for sum_{n > k, n ~ r mod 3} y^n (geometric in y^3).
inline double skip_tail_value(double y, long k, int r) {
  long n0 = k + 1;
  while ((n0 % 3) != r) ++n0;
  double q_up = dint::pow_up(y, 3);
  if (q_up >= 1.0) return std::numeric_limits<double>::infinity();
  return dint::div_up(dint::pow_up(y, n0), dint::sub_dn(1.0, q_up));
}

/// Upper bound for sum_{n > k, n ~ r mod 3} n y^(n-1).
inline double skip_tail_deriv(double y, long k, int r) {
  long n0 = k + 1;
  while ((n0 % 3) != r) ++n0;
  double q_up = dint::pow_up(y, 3);
  if (q_up >= 1.0) return std::numeric_limits<double>::infinity();
  double omq = dint::sub_dn(1.0, q_up);
  // sum (n0 + 3j) q^j = n0/(1-q) + 3q/(1-q)^2
  double a = dint::div_up(static_cast<double>(n0), omq);
  double b = dint::div_up(dint::mul_up(3.0, q_up), dint::mul_dn(omq, omq));
  return dint::mul_up(dint::pow_up(y, n0 - 1), dint::add_up(a, b));
}

}  // namespace detail

/// Upper bound T for the worst-case tail |sum_{n > k, n in A} a_n y^n| over
/// coefficients in {-1, 0, 1} and 0 <= x <= y; closed-form geometric sums.
inline double tail_value_bound(SeriesClass cls, long k, double y) {
  if (!(y >= 0) || y >= 1) throw std::invalid_argument("tail bound requires 0 <= y < 1");
  if (cls.kind == SeriesClass::Full)
    return dint::div_up(dint::pow_up(y, k + 1), dint::sub_dn(1.0, y));
  int skip = cls.kind == SeriesClass::Skip1 ? 1 : 2;
  double t = 0;
  for (int r = 0; r < 3; ++r)
    if (r != skip) t = dint::add_up(t, detail::skip_tail_value(y, k, r));
  return t;
}

/// Upper bound for the derivative tail sum_{n > k, n in A} n y^(n-1).
inline double tail_derivative_bound(SeriesClass cls, long k, double y) {
  if (!(y >= 0) || y >= 1) throw std::invalid_argument("tail bound requires 0 <= y < 1");
  if (cls.kind == SeriesClass::Full) {
    // d/dy [y^(k+1)/(1-y)] = y^k (k+1 - k y) / (1-y)^2
    double num = dint::mul_up(dint::pow_up(y, k),
                              dint::sub_up(static_cast<double>(k + 1),
                                           dint::mul_dn(static_cast<double>(k), y)));
    double omy = dint::sub_dn(1.0, y);
    return dint::div_up(num, dint::mul_dn(omy, omy));
  }
  int skip = cls.kind == SeriesClass::Skip1 ? 1 : 2;
  double t = 0;
  for (int r = 0; r < 3; ++r)
    if (r != skip) t = dint::add_up(t, detail::skip_tail_deriv(y, k, r));
  return t;
}

/// Symmetric Interval form of the spec-level tail bound, [-T, T].
inline Interval class_tail_bound(SeriesClass cls, long k, const Interval& X) {
  if (!(X.hi().to_double(MPFR_RNDU) < 1.0))
    throw std::invalid_argument("class_tail_bound: X.hi must be < 1");
  double t = tail_value_bound(cls, k, X.hi().to_double(MPFR_RNDU));
  return Interval(BigFloat::of_double(-t), BigFloat::of_double(t), 64);
}
inline Interval class_tail_bound_derivative(SeriesClass cls, long k, const Interval& X) {
  if (!(X.hi().to_double(MPFR_RNDU) < 1.0))
    throw std::invalid_argument("class_tail_bound: X.hi must be < 1");
  double t = tail_derivative_bound(cls, k, X.hi().to_double(MPFR_RNDU));
  return Interval(BigFloat::of_double(-t), BigFloat::of_double(t), 64);
}

enum class TStatus { Certified, Counterexample, Inconclusive };

inline std::string tstatus_name(TStatus s) {
  switch (s) {
    case TStatus::Certified: return "CERTIFIED";
    case TStatus::Counterexample: return "COUNTEREXAMPLE";
    case TStatus::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

struct TransversalityOutcome {
  TStatus status = TStatus::Inconclusive;
  SeriesClass cls;
  double x0 = 0, delta = 0;
  std::vector<int> witness_prefix;  // coefficients a_1..a_k, counterexample only
  double witness_x = 0;
  std::uint64_t nodes = 0;
  int max_depth = 0;
  std::uint64_t cell_digest = 0;  // order-sensitive hash of closed cells
};

namespace detail {

struct PrefixEval {
  dint::I f, df;  // enclosures of the assigned part over the x-cell
};

/// Enclosure of 1 + sum a_n x^n and its derivative over [xl, xh], prefix only.
inline PrefixEval eval_prefix(const std::vector<int>& prefix, double xl, double xh) {
  dint::I f{1.0, 1.0}, df{0.0, 0.0};
  double plo = 1.0, phi = 1.0;  // x^(n-1) bounds
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    long n = static_cast<long>(i) + 1;
    int a = prefix[i];
    double qlo = std::max(0.0, dint::mul_dn(plo, xl));  // x^n
    double qhi = dint::mul_up(phi, xh);
    if (a == 1) {
      f = f.add(dint::I{qlo, qhi});
      df = df.add(dint::I{dint::mul_dn(static_cast<double>(n), plo),
                          dint::mul_up(static_cast<double>(n), phi)});
    } else if (a == -1) {
      f = f.sub(dint::I{qlo, qhi});
      df = df.sub(dint::I{dint::mul_dn(static_cast<double>(n), plo),
                          dint::mul_up(static_cast<double>(n), phi)});
    }
    plo = qlo;
    phi = qhi;
  }
  return {f, df};
}

// Hot-path cell evaluation in plain doubles plus a fixed outward slack.
// Magnitudes are bounded by 1/(1-x)^2 <= 13 for x <= 0.72 and the op count
// by ~4 * k_cap <= 1600, so accumulated roundoff stays below 5e-12; the
// 1e-11 slack dominates it while remaining 7 orders of magnitude below the
// closure margins the search certifies against.
constexpr double kEvalSlack = 1e-11;

struct CellEval {
  double f_lo, f_hi, df_lo, df_hi;
};

inline CellEval eval_cell_plain(const std::vector<int8_t>& prefix, double xl, double xh) {
  double flo = 1, fhi = 1, dlo = 0, dhi = 0, plo = 1, phi = 1;  // p = x^(n-1)
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    double n = static_cast<double>(i + 1);
    double qlo = plo * xl, qhi = phi * xh;  // x^n
    int a = prefix[i];
    if (a == 1) {
      flo += qlo;
      fhi += qhi;
      dlo += n * plo;
      dhi += n * phi;
    } else if (a == -1) {
      flo -= qhi;
      fhi -= qlo;
      dlo -= n * phi;
      dhi -= n * plo;
    }
    plo = qlo;
    phi = qhi;
  }
  return {flo - kEvalSlack, fhi + kEvalSlack, dlo - kEvalSlack, dhi + kEvalSlack};
}

inline double tail_value_plain(SeriesClass cls, long k, double y) {
  double t;
  if (cls.kind == SeriesClass::Full) {
    t = std::pow(y, static_cast<double>(k + 1)) / (1.0 - y);
  } else {
    int skip = cls.kind == SeriesClass::Skip1 ? 1 : 2;
    double q = y * y * y;
    t = 0;
    for (int r = 0; r < 3; ++r) {
      if (r == skip) continue;
      long n0 = k + 1;
      while ((n0 % 3) != r) ++n0;
      t += std::pow(y, static_cast<double>(n0)) / (1.0 - q);
    }
  }
  return t * (1.0 + 1e-12) + 1e-300;
}

inline double tail_deriv_plain(SeriesClass cls, long k, double y) {
  double t;
  if (cls.kind == SeriesClass::Full) {
    double omy = 1.0 - y;
    t = std::pow(y, static_cast<double>(k)) * (k + 1 - k * y) / (omy * omy);
  } else {
    int skip = cls.kind == SeriesClass::Skip1 ? 1 : 2;
    double q = y * y * y, omq = 1.0 - q;
    t = 0;
    for (int r = 0; r < 3; ++r) {
      if (r == skip) continue;
      long n0 = k + 1;
      while ((n0 % 3) != r) ++n0;
      t += std::pow(y, static_cast<double>(n0 - 1)) *
           (static_cast<double>(n0) / omq + 3.0 * q / (omq * omq));
    }
  }
  return t * (1.0 + 1e-12) + 1e-300;
}

struct BBNode {
  std::vector<int8_t> prefix;
  double xl, xh;
  bool branch_x;
  int depth;
};

struct BBResult {
  std::uint64_t nodes = 0;
  int max_depth = 0;
  std::uint64_t digest = 0xcbf29ce484222325ull;
  bool found_witness = false;
  std::vector<int8_t> witness_prefix;
  double witness_x = 0;
  bool budget_hit = false;
  std::uint64_t unresolved = 0;  // cells hitting the resolution caps
};

/// Iterative depth-first branch and bound over (prefix, x-cell) cells.
/// A cell closes when the tail-inclusive enclosures prove f >= delta or
/// f' < -delta on it. Paths that graze the decision boundary cannot close;
/// they are cut off at the resolution caps and counted as unresolved (which
/// forfeits CERTIFIED but keeps the search finite).
inline BBResult bb_run(SeriesClass cls, double x0, double delta, std::uint64_t budget) {
  BBResult res;
  // beyond this prefix length the tail is below 1e-18: extending cannot help
  long k_cap = 8;
  while (k_cap < 400 && tail_value_plain(cls, k_cap, x0) > 1e-18) ++k_cap;
  const double x_floor = 1e-12;

  std::vector<BBNode> stack;
  stack.push_back({{}, 0.0, x0, false, 0});
  while (!stack.empty()) {
    BBNode node = std::move(stack.back());
    stack.pop_back();
    if (++res.nodes > budget) {
      res.budget_hit = true;
      break;
    }
    res.max_depth = std::max(res.max_depth, node.depth);
    const long k = static_cast<long>(node.prefix.size());
    CellEval ce = eval_cell_plain(node.prefix, node.xl, node.xh);
    double tf = tail_value_plain(cls, k, node.xh);
    double td = tail_deriv_plain(cls, k, node.xh);
    if (ce.f_lo - tf >= delta || ce.df_hi + td < -delta) {
      int reason = ce.f_lo - tf >= delta ? 0 : 1;
      std::uint64_t buf[3];
      std::memcpy(&buf[0], &node.xl, 8);
      std::memcpy(&buf[1], &node.xh, 8);
      buf[2] = (static_cast<std::uint64_t>(k) << 8) | static_cast<unsigned>(reason);
      res.digest = fnv1a64(buf, sizeof buf, res.digest);
      continue;
    }
    // concrete probe: the zero-tail completion at the cell midpoint
    double xm = 0.5 * (node.xl + node.xh);
    CellEval pm = eval_cell_plain(node.prefix, xm, xm);
    if (pm.f_hi < delta && pm.df_lo >= -delta) {
      res.found_witness = true;
      res.witness_prefix = node.prefix;
      res.witness_x = xm;
      break;
    }
    bool can_x = (node.xh - node.xl) > x_floor;
    bool can_k = k < k_cap;
    bool do_x = node.branch_x ? can_x : (!can_k && can_x);
    if (do_x) {
      stack.push_back({node.prefix, xm, node.xh, false, node.depth + 1});
      stack.push_back({std::move(node.prefix), node.xl, xm, false, node.depth + 1});
    } else if (can_k) {
      long next = k + 1;
      if (cls.allows(next)) {
        for (int a : {1, 0, -1}) {  // pushed reversed: children visited -1, 0, 1
          BBNode child{node.prefix, node.xl, node.xh, true, node.depth + 1};
          child.prefix.push_back(static_cast<int8_t>(a));
          stack.push_back(std::move(child));
        }
      } else {
        BBNode child{std::move(node.prefix), node.xl, node.xh, true, node.depth + 1};
        child.prefix.push_back(0);  // forced zero index
        stack.push_back(std::move(child));
      }
    } else {
      ++res.unresolved;  // boundary-grazing cell at both caps
    }
  }
  return res;
}

/// Deterministic beam falsifier: sweeps an x-grid and steers coefficient
/// prefixes toward simultaneous f(x) ~ 0, f'(x) >= -delta. Returns a
/// candidate witness (zero-tail completion) or nothing; every candidate is
/// re-verified before use.
inline bool beam_falsify(SeriesClass cls, double x0, double delta,
                         std::vector<int8_t>& witness_prefix, double& witness_x,
                         std::uint64_t& evals) {
  struct Cand {
    double f, df;
    std::vector<int8_t> coeffs;
  };
  const int grid = 192, width = 192, max_depth = 48;
  for (int gi = 0; gi <= grid; ++gi) {
    double x = x0 * (0.5 + 0.5 * static_cast<double>(gi) / grid);
    std::vector<Cand> beam{{1.0, 0.0, {}}};
    double xp = 1.0;
    for (int n = 1; n <= max_depth; ++n) {
      double dxp = n * xp;  // d/dx x^n = n x^(n-1)
      xp *= x;
      std::vector<Cand> next;
      next.reserve(beam.size() * 3);
      for (const auto& c : beam) {
        for (int a = -1; a <= 1; ++a) {
          if (a != 0 && !cls.allows(n)) continue;
          Cand d{c.f + a * xp, c.df + a * dxp, c.coeffs};
          d.coeffs.push_back(static_cast<int8_t>(a));
          ++evals;
          next.push_back(std::move(d));
        }
      }
      auto score = [&](const Cand& c) {
        return std::abs(c.f) + 0.3 * std::max(0.0, -(c.df + 0.5 * delta));
      };
      std::stable_sort(next.begin(), next.end(), [&](const Cand& a, const Cand& b) {
        double sa = score(a), sb = score(b);
        if (sa != sb) return sa < sb;
        return a.coeffs < b.coeffs;  // deterministic tie-break
      });
      if (static_cast<int>(next.size()) > width) next.resize(width);
      beam = std::move(next);
      for (const auto& c : beam) {
        if (std::abs(c.f) < 0.8 * delta && c.df >= -0.5 * delta) {
          CellEval pe = eval_cell_plain(c.coeffs, x, x);
          if (pe.f_hi < delta && pe.df_lo >= -delta) {
            witness_prefix = c.coeffs;
            witness_x = x;
            return true;
          }
        }
      }
    }
  }
  return false;
}

}  // namespace detail

/// Verifies a counterexample witness at MPFR precision: the zero-tail
/// completion of `prefix` satisfies f(x) < delta and f'(x) >= -delta.
inline bool verify_witness(SeriesClass cls, const std::vector<int>& prefix, double x,
                           double delta, mpfr_prec_t prec = 256) {
  Interval X = Interval::point(x, prec);
  Interval f = Interval::point_long(1, prec), df = Interval::point_long(0, prec);
  Interval p = Interval::point_long(1, prec);
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    long n = static_cast<long>(i) + 1;
    if (!cls.allows(n) && prefix[i] != 0) return false;
    Interval q = p.mul(X);
    if (prefix[i] != 0) {
      Interval t = prefix[i] == 1 ? q : -q;
      f = f.add(t);
      Interval dt = p.mul(Interval::point_long(n, prec));
      df = df.add(prefix[i] == 1 ? dt : -dt);
    }
    p = q;
  }
  Interval d = Interval::point(delta, prec);
  return f.hi() < d.lo() && df.lo() >= (-d).hi();
}

/// Branch-and-bound certification that [0, x0] is an interval of
/// delta-transversality for the class: every cell is closed by proving
/// either f >= delta or f' < -delta on it (tail bounds included).
inline TransversalityOutcome certify(SeriesClass cls, double x0, double delta,
                                     std::uint64_t budget_nodes = 10'000'000) {
  if (!(x0 > 0) || !(x0 < 1)) throw std::invalid_argument("certify: need 0 < x0 < 1");
  if (!(delta > 0)) throw std::invalid_argument("certify: need delta > 0");
  TransversalityOutcome out;
  out.cls = cls;
  out.x0 = x0;
  out.delta = delta;
  auto finish_bb = [&](const detail::BBResult& res, std::uint64_t extra) -> bool {
    out.nodes += res.nodes + extra;
    out.max_depth = std::max(out.max_depth, res.max_depth);
    out.cell_digest = res.digest;
    if (res.found_witness) {
      out.status = TStatus::Counterexample;
      out.witness_prefix.assign(res.witness_prefix.begin(), res.witness_prefix.end());
      out.witness_x = res.witness_x;
      if (!verify_witness(cls, out.witness_prefix, out.witness_x, delta))
        throw std::logic_error("certify: witness failed high-precision re-verification");
      return true;
    }
    if (!res.budget_hit && res.unresolved == 0) {
      out.status = TStatus::Certified;
      return true;
    }
    out.status = TStatus::Inconclusive;
    return false;
  };
  // stage 1: a cheap exhaustion attempt settles every easily-certified case
  std::uint64_t probe = std::min<std::uint64_t>(budget_nodes, 200'000);
  if (finish_bb(detail::bb_run(cls, x0, delta, probe), 0)) return out;
  // stage 2: beam falsification, which homes in on near-tangencies that the
  // lexicographic exhaustion would reach only after the budget
  std::vector<int8_t> wprefix;
  double wx = 0;
  std::uint64_t beam_evals = 0;
  if (detail::beam_falsify(cls, x0, delta, wprefix, wx, beam_evals)) {
    out.status = TStatus::Counterexample;
    out.witness_prefix.assign(wprefix.begin(), wprefix.end());
    out.witness_x = wx;
    out.nodes += beam_evals;
    if (!verify_witness(cls, out.witness_prefix, out.witness_x, delta))
      throw std::logic_error("certify: witness failed high-precision re-verification");
    return out;
  }
  // stage 3: full-budget exhaustion
  if (budget_nodes > probe) {
    out.nodes = 0;
    finish_bb(detail::bb_run(cls, x0, delta, budget_nodes), beam_evals + probe);
  }
  return out;
}

/// Outer bisection on delta: largest certified delta on a dyadic grid.
struct DeltaSearchResult {
  double best_delta = 0;  // 0: nothing certified
  bool found = false;
  TransversalityOutcome best_outcome;
  std::vector<std::pair<double, TStatus>> trace;
};

inline DeltaSearchResult delta_search(SeriesClass cls, double x0,
                                      std::uint64_t budget_nodes = 10'000'000,
                                      double resolution = 1.0 / 2048.0) {
  DeltaSearchResult out;
  double lo = 0.0, hi = 0.5;
  // first probe at the top of the range, then bisect
  TransversalityOutcome top = certify(cls, x0, hi, budget_nodes);
  out.trace.emplace_back(hi, top.status);
  if (top.status == TStatus::Certified) {
    out.best_delta = hi;
    out.found = true;
    out.best_outcome = top;
    return out;
  }
  while (hi - lo > resolution) {
    double mid = 0.5 * (lo + hi);
    TransversalityOutcome r = certify(cls, x0, mid, budget_nodes);
    out.trace.emplace_back(mid, r.status);
    if (r.status == TStatus::Certified) {
      lo = mid;
      out.best_delta = mid;
      out.found = true;
      out.best_outcome = r;
    } else {
      hi = mid;
    }
  }
  return out;
}

/// Checks the decay consequence of transversality: if every completion of the
/// prefix has f(x1) < delta, then f(x) < delta - delta (x - x1) up to x0.
/// Violations are counted in two strengths: certified (a real falsification)
/// and unverifiable (enclosure too wide to assert the decay bound).
struct DecayReport {
  bool precondition_ok = false;
  std::string message;
  long grid_points = 0;
  long certified_violations = 0;
  long unverified_points = 0;
  bool all_passed() const { return precondition_ok && certified_violations == 0 && unverified_points == 0; }
};

inline DecayReport decay_check(const std::vector<int>& prefix, SeriesClass cls, double x1,
                               double x0, double delta, long grid = 64) {
  DecayReport rep;
  if (!(x1 >= 0) || !(x0 < 1) || x1 > x0) {
    rep.message = "need 0 <= x1 <= x0 < 1";
    return rep;
  }
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (prefix[i] != 0 && !cls.allows(static_cast<long>(i) + 1)) {
      rep.message = "prefix uses an index the class forbids";
      return rep;
    }
  auto f_encl = [&](double x) {
    detail::PrefixEval pe = detail::eval_prefix(prefix, x, x);
    double t = tail_value_bound(cls, static_cast<long>(prefix.size()), x);
    return dint::I{dint::sub_dn(pe.f.lo, t), dint::add_up(pe.f.hi, t)};
  };
  dint::I f1 = f_encl(x1);
  if (!(f1.hi < delta)) {
    rep.message = "f(x1) < delta not verifiable with tails";
    return rep;
  }
  rep.precondition_ok = true;
  long points = x1 == x0 ? 1 : grid + 1;
  for (long j = 0; j < points; ++j) {
    double x = points == 1 ? x1 : x1 + (x0 - x1) * static_cast<double>(j) / grid;
    double bound = dint::sub_dn(delta, dint::mul_up(delta, dint::sub_up(x, x1)));
    dint::I fx = f_encl(x);
    ++rep.grid_points;
    if (fx.lo >= bound)
      ++rep.certified_violations;
    else if (!(fx.hi < bound))
      ++rep.unverified_points;
  }
  rep.message = rep.all_passed() ? "all grid points pass" : "see counters";
  return rep;
}

/// Randomized soundness sampling against a certificate: draws concrete
/// zero-tail class members (random prefix) and points x in [0, x0], and
/// checks that no sample certifiably violates f < delta => f' < -delta.
inline bool soundness_sample(SeriesClass cls, double x0, double delta, int count,
                             std::uint64_t seed) {
  std::uint64_t state = seed ? seed : 0x9e3779b97f4a7c15ull;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  for (int i = 0; i < count; ++i) {
    std::size_t len = 1 + next() % 48;
    std::vector<int> prefix(len, 0);
    for (std::size_t j = 0; j < len; ++j) {
      long n = static_cast<long>(j) + 1;
      prefix[j] = cls.allows(n) ? static_cast<int>(next() % 3) - 1 : 0;
    }
    double x = x0 * (static_cast<double>(next() >> 11) * 0x1.0p-53);
    detail::PrefixEval pe = detail::eval_prefix(prefix, x, x);
    if (pe.f.hi < delta && pe.df.lo >= -delta) return false;  // certified violation
  }
  return true;
}

}  // namespace bernoulli
