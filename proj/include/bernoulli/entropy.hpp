#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "bernoulli/interval.hpp"
#include "bernoulli/numbers.hpp"
#include "bernoulli/polynomial.hpp"
#include "bernoulli/roots.hpp"

namespace bernoulli {

/// Index filter for the signed power sums: ALL keeps every index n >= 0,
/// TRIMMED keeps exactly the n with 3 not dividing (n - 2).
enum class IndexFilter { All, Trimmed };

inline bool filter_accepts(IndexFilter f, long n) {
  return f == IndexFilter::All || (n - 2) % 3 != 0;
}

inline std::string filter_name(IndexFilter f) {
  return f == IndexFilter::All ? "ALL" : "TRIMMED";
}

/// Exact distribution of the signed sums sum_{n in steps} (+-) lambda^n,
/// represented as residue vectors in Q[x]/(modulus) with exact counts.
/// Collision detection is exact: two sums collide iff their residues agree.
struct ValueDistribution {
  using Table = std::unordered_map<RationalVector, Int, RatVecHash>;

  Table table;
  std::vector<long> steps;  // consumed ambient indices, in order
  IntPolynomial modulus;

  static ValueDistribution initial(IntPolynomial modulus) {
    if (modulus.degree() < 1)
      throw std::invalid_argument("ValueDistribution: modulus must have degree >= 1");
    ValueDistribution d;
    d.table.emplace(RationalVector(static_cast<std::size_t>(modulus.degree()), Rat(0)), Int(1));
    d.modulus = std::move(modulus);
    return d;
  }

  Int total_mass() const {
    Int s = 0;
    for (const auto& [k, c] : table) s += c;
    return s;
  }
  bool full_support() const {
    return Int(table.size()) == pow_int(2, static_cast<unsigned long>(steps.size()));
  }
};

struct TableCapExceeded : std::runtime_error {
  std::size_t attempted;
  std::size_t steps_done;
  TableCapExceeded(std::size_t attempted_, std::size_t steps_done_)
      : std::runtime_error("value-distribution table cap exceeded"),
        attempted(attempted_),
        steps_done(steps_done_) {}
};

/// One DP step: each value v splits into v + r and v - r with the same count.
/// Total mass doubles; merging is by exact residue equality.
inline ValueDistribution shift_distribution(const ValueDistribution& dist,
                                            const RationalVector& power_residue,
                                            long ambient_index,
                                            std::size_t table_cap = 50'000'000) {
  if (power_residue.size() != static_cast<std::size_t>(dist.modulus.degree()))
    throw std::invalid_argument("shift_distribution: residue length mismatch");
  if (dist.table.size() * 2 > table_cap)
    throw TableCapExceeded(dist.table.size() * 2, dist.steps.size());
  ValueDistribution out;
  out.modulus = dist.modulus;
  out.steps = dist.steps;
  out.steps.push_back(ambient_index);
  out.table.reserve(dist.table.size() * 2);
  const std::size_t d = power_residue.size();
  RationalVector key(d);
  for (const auto& [v, c] : dist.table) {
    for (std::size_t i = 0; i < d; ++i) key[i] = v[i] + power_residue[i];
    out.table[key] += c;
    for (std::size_t i = 0; i < d; ++i) key[i] = v[i] - power_residue[i];
    out.table[key] += c;
  }
  return out;
}

/// Shannon entropy enclosure (nats) of a distribution with exact counts:
/// H = N ln 2 - 2^-N * sum c ln c, with N = number of steps.
inline Interval entropy(const ValueDistribution& dist, mpfr_prec_t prec = 128) {
  if (dist.table.empty()) throw std::invalid_argument("entropy: empty table");
  long n = static_cast<long>(dist.steps.size());
  // group equal counts: the sum has few distinct count values, and a
  // deterministic iteration order for the interval accumulation
  std::map<Int, Int> histogram;
  for (const auto& [v, c] : dist.table) histogram[c] += 1;
  Interval sum = Interval::point_long(0, prec);
  for (const auto& [count, mult] : histogram) {
    if (count == 1) continue;  // ln 1 = 0
    Interval term = Interval::of_int(count, prec).log().mul(Interval::of_int(count * mult, prec));
    sum = sum.add(term);
  }
  Interval h = Interval::ln2(prec).mul(Interval::point_long(n, prec));
  return h.sub(sum.mul_2si(-n));
}

/// The (N, H_N) sequence for one lambda and one index filter.
struct EntropySeries {
  struct Entry {
    long consumed;          // N: number of consumed indices
    long ambient;           // largest ambient index consumed so far
    Interval H;             // enclosure of H_N in nats
    bool full_support;      // table has exactly 2^N keys (H_N = N ln 2 exactly)
  };
  std::vector<Entry> entries;
  IndexFilter filter = IndexFilter::All;
  IntPolynomial modulus;
  bool truncated = false;      // stopped early at the table cap
  std::size_t table_cap = 0;
  std::size_t final_table_size = 0;
};

/// Runs the DP for N = 1..n_max consumed indices. Stops early (flagged, never
/// silent) if the table would exceed `table_cap` entries.
inline EntropySeries entropy_series(const AlgebraicNumber& lambda, long n_max,
                                    IndexFilter filter = IndexFilter::All,
                                    std::size_t table_cap = 50'000'000,
                                    mpfr_prec_t prec = 128) {
  if (n_max < 1) throw std::invalid_argument("entropy_series: n_max must be >= 1");
  EntropySeries series;
  series.filter = filter;
  series.modulus = lambda.defining();
  series.table_cap = table_cap;

  ValueDistribution dist = ValueDistribution::initial(lambda.defining());
  const std::size_t d = static_cast<std::size_t>(lambda.defining().degree());
  RationalVector power(d, Rat(0));
  power[0] = 1;  // residue of x^0
  long consumed = 0;
  for (long n = 0; consumed < n_max; ++n) {
    if (n > 0) power = residue_times_x(power, lambda.defining());
    if (!filter_accepts(filter, n)) continue;
    try {
      dist = shift_distribution(dist, power, n, table_cap);
    } catch (const TableCapExceeded&) {
      series.truncated = true;
      break;
    }
    ++consumed;
    series.entries.push_back(
        {consumed, n, entropy(dist, prec), dist.full_support()});
  }
  series.final_table_size = dist.table.size();
  return series;
}

/// Fekete upper bound for the Garsia entropy: min over N of H_N / N.
/// Valid for the ALL filter only (subadditivity of H_N).
struct FeketeBound {
  Interval value;
  long argmin_n = 0;
  bool exactly_ln2 = false;  // every stored table was full: H_N = N ln 2 exactly
};

inline FeketeBound garsia_upper_bound(const EntropySeries& series, mpfr_prec_t prec = 128) {
  if (series.filter != IndexFilter::All)
    throw std::invalid_argument("garsia_upper_bound: requires the ALL filter");
  if (series.entries.empty())
    throw std::invalid_argument("garsia_upper_bound: empty series");
  FeketeBound out;
  out.exactly_ln2 = true;
  bool first = true;
  for (const auto& e : series.entries) {
    if (!e.full_support) out.exactly_ln2 = false;
    Interval ratio = e.H.div(Interval::point_long(e.consumed, prec));
    if (first) {
      out.value = ratio;
      out.argmin_n = e.consumed;
      first = false;
    } else {
      if (ratio.hi() < out.value.hi()) out.argmin_n = e.consumed;
      out.value = imin(out.value, ratio);
    }
  }
  if (out.exactly_ln2) out.value = Interval::ln2(prec);
  return out;
}

/// Uncertified point estimate of h_lambda from the tail differences
/// H_N - H_{N-1}; the spread of the last few differences is reported in
/// place of a rigorous error bar.
struct Estimate {
  double value = 0;
  double spread = 0;
  bool certified = false;  // always false: extrapolation, not an enclosure
};

inline Estimate garsia_estimate(const EntropySeries& series, std::size_t tail = 6) {
  if (series.entries.size() < 4)
    throw std::invalid_argument("garsia_estimate: need at least 4 entries");
  std::vector<double> diffs;
  for (std::size_t i = 1; i < series.entries.size(); ++i)
    diffs.push_back(series.entries[i].H.mid_d() - series.entries[i - 1].H.mid_d());
  std::size_t k = std::min(tail, diffs.size());
  double sum = 0, mn = diffs[diffs.size() - k], mx = mn;
  for (std::size_t i = diffs.size() - k; i < diffs.size(); ++i) {
    sum += diffs[i];
    mn = std::min(mn, diffs[i]);
    mx = std::max(mx, diffs[i]);
  }
  return {sum / static_cast<double>(k), mx - mn, false};
}

}  // namespace bernoulli
