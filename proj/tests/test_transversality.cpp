#include <doctest.h>

#include <cmath>
#include <random>

#include "bernoulli/transversality.hpp"

using namespace bernoulli;

namespace {

double x0_two_pow_23() {  // upper bound of 2^(-2/3), so [0, 2^(-2/3)] is covered
  return std::nextafter(std::pow(2.0, -2.0 / 3.0), 1.0);
}

/// 60-term truncation oracle for the SKIP tail sums.
double truncated_tail(SeriesClass cls, long k, double y, bool derivative) {
  double t = 0;
  for (long n = k + 1; n <= k + 60; ++n) {
    if (!cls.allows(n)) continue;
    t += derivative ? n * std::pow(y, n - 1) : std::pow(y, n);
  }
  return t;
}

}  // namespace

TEST_CASE("class membership rules") {
  SeriesClass p{SeriesClass::Full}, p1{SeriesClass::Skip1}, p2{SeriesClass::Skip2};
  for (long n = 1; n <= 30; ++n) {
    CHECK(p.allows(n));
    CHECK(p1.allows(n) == ((n - 1) % 3 != 0));
    CHECK(p2.allows(n) == ((n - 2) % 3 != 0));
  }
  CHECK_FALSE(p.allows(0));
  CHECK(SeriesClass::parse("P1").kind == SeriesClass::Skip1);
  CHECK_THROWS_AS(SeriesClass::parse("Q"), std::invalid_argument);
}

TEST_CASE("tail bounds: closed forms vs truncation oracle") {
  // FULL: T = y^(k+1) / (1 - y)
  for (long k : {0L, 3L, 10L}) {
    for (double y : {0.3, 0.5, 0.63}) {
      Interval X(BigFloat::of_double(0.0), BigFloat::of_double(y), 64);
      double t = class_tail_bound({SeriesClass::Full}, k, X).hi().to_double();
      double expect = std::pow(y, k + 1) / (1 - y);
      CHECK(t == doctest::Approx(expect).epsilon(1e-12));
      double trunc = truncated_tail({SeriesClass::Full}, k, y, false);
      CHECK(t >= trunc);
      CHECK(t - trunc <= 2 * std::pow(y, k + 61) / (1 - y) + 1e-15);
    }
  }
  // SKIP(1), k = 0, y = 1/2 against the truncation oracle
  Interval X(BigFloat::of_double(0.0), BigFloat::of_double(0.5), 64);
  double t1 = class_tail_bound({SeriesClass::Skip1}, 0, X).hi().to_double();
  double tr = truncated_tail({SeriesClass::Skip1}, 0, 0.5, false);
  CHECK(t1 >= tr);
  CHECK(t1 - tr <= 1e-15);
  // derivative analogue
  double d1 = class_tail_bound_derivative({SeriesClass::Skip1}, 0, X).hi().to_double();
  double dtr = truncated_tail({SeriesClass::Skip1}, 0, 0.5, true);
  CHECK(d1 >= dtr);
  CHECK(d1 - dtr <= 1e-12);
  // vanishing tail as k grows
  double tk = class_tail_bound({SeriesClass::Full}, 200, X).hi().to_double();
  CHECK(tk < 1e-55);
  // domain guard
  Interval bad(BigFloat::of_double(0.0), BigFloat::of_double(1.0), 64);
  CHECK_THROWS_AS(class_tail_bound({SeriesClass::Full}, 0, bad), std::invalid_argument);
}

TEST_CASE("(P, 0.45, 0.1) certifies at depth 0 via the envelope") {
  TransversalityOutcome out = certify({SeriesClass::Full}, 0.45, 0.1);
  CHECK(out.status == TStatus::Certified);
  CHECK(out.max_depth == 0);
  CHECK(out.nodes == 1);
}

TEST_CASE("(P, 2^(-2/3), delta) certifies for a dyadic delta >= 2^-10") {
  TransversalityOutcome out = certify({SeriesClass::Full}, x0_two_pow_23(), 1.0 / 1024);
  CHECK(out.status == TStatus::Certified);
  CHECK(out.nodes < 100000);
}

TEST_CASE("(P, 0.71, 0.01) yields a verified counterexample") {
  TransversalityOutcome out = certify({SeriesClass::Full}, 0.71, 0.01);
  REQUIRE(out.status == TStatus::Counterexample);
  CHECK(out.witness_x <= 0.71);
  CHECK(!out.witness_prefix.empty());
  // witness re-verifies under doubled precision
  CHECK(verify_witness(out.cls, out.witness_prefix, out.witness_x, out.delta, 512));
  CHECK(verify_witness(out.cls, out.witness_prefix, out.witness_x, out.delta, 1024));
}

TEST_CASE("P1 and P2 certify on [0, 2^(-1/2)] for some positive delta") {
  double x0 = std::nextafter(std::pow(2.0, -0.5), 1.0);
  for (SeriesClass cls : {SeriesClass{SeriesClass::Skip1}, SeriesClass{SeriesClass::Skip2}}) {
    TransversalityOutcome out = certify(cls, x0, 1.0 / 1024);
    CAPTURE(cls.name());
    CHECK(out.status == TStatus::Certified);
  }
}

TEST_CASE("parameter domain violations are rejected") {
  CHECK_THROWS_AS(certify({SeriesClass::Full}, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(certify({SeriesClass::Full}, 1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(certify({SeriesClass::Full}, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("soundness sampling: certified regions never exhibit violations") {
  CHECK(soundness_sample({SeriesClass::Full}, 0.45, 0.1, 10000, 12345));
  CHECK(soundness_sample({SeriesClass::Full}, x0_two_pow_23(), 1.0 / 1024, 10000, 999));
}

TEST_CASE("at most one zero in a certified region") {
  // consequence of transversality: a truncated class member changes sign at
  // most once on [0, x0]
  std::mt19937_64 rng(77);
  double x0 = x0_two_pow_23();
  for (int it = 0; it < 200; ++it) {
    std::vector<int> prefix(40);
    for (auto& a : prefix) a = static_cast<int>(rng() % 3) - 1;
    int changes = 0, last = 0;
    for (int g = 0; g <= 400; ++g) {
      double x = x0 * g / 400.0;
      double f = 1, xp = 1;
      for (std::size_t i = 0; i < prefix.size(); ++i) {
        xp *= x;
        f += prefix[i] * xp;
      }
      int s = f > 0 ? 1 : (f < 0 ? -1 : 0);
      if (s == 0) continue;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    CHECK(changes <= 1);
  }
}

TEST_CASE("monotone hardness: certified instances stay certified on shrunken x0") {
  double x0 = x0_two_pow_23();
  TransversalityOutcome base = certify({SeriesClass::Full}, x0, 1.0 / 256);
  REQUIRE(base.status == TStatus::Certified);
  for (double shrink : {0.9, 0.7, 0.5}) {
    TransversalityOutcome out = certify({SeriesClass::Full}, x0 * shrink, 1.0 / 256);
    CHECK(out.status == TStatus::Certified);
  }
}

TEST_CASE("delta search reports the largest certified dyadic delta") {
  DeltaSearchResult ds = delta_search({SeriesClass::Full}, 0.55, 2'000'000, 1.0 / 128);
  CHECK(ds.found);
  CHECK(ds.best_delta > 0);
  CHECK(ds.best_outcome.status == TStatus::Certified);
  // re-certify the reported delta
  TransversalityOutcome re = certify({SeriesClass::Full}, 0.55, ds.best_delta);
  CHECK(re.status == TStatus::Certified);
}

TEST_CASE("decay consequence holds in a certified region") {
  // f = 1 - x - x^2 - ... (all-minus prefix): the premise f(x1) < delta is
  // verifiable with tails near the right end of [0, 0.5]
  double x0 = 0.5, delta = 0.1;
  REQUIRE(certify({SeriesClass::Full}, x0, delta).status == TStatus::Certified);
  std::vector<int> prefix(40, -1);
  DecayReport rep = decay_check(prefix, {SeriesClass::Full}, 0.48, x0, delta);
  CHECK(rep.precondition_ok);
  CHECK(rep.certified_violations == 0);
  CHECK(rep.unverified_points == 0);
  CHECK(rep.grid_points >= 64);

  // degenerate single-point interval
  DecayReport single = decay_check(prefix, {SeriesClass::Full}, 0.48, 0.48, delta);
  CHECK(single.precondition_ok);
  CHECK(single.grid_points == 1);

  // precondition failure: f(x1) not verifiably below delta
  DecayReport bad = decay_check(std::vector<int>(3, 1), {SeriesClass::Full}, 0.1, x0, delta);
  CHECK_FALSE(bad.precondition_ok);
  CHECK(!bad.message.empty());
}

TEST_CASE("certify is deterministic") {
  auto a = certify({SeriesClass::Full}, 0.71, 0.01);
  auto b = certify({SeriesClass::Full}, 0.71, 0.01);
  CHECK(a.status == b.status);
  CHECK(a.witness_prefix == b.witness_prefix);
  CHECK(a.witness_x == b.witness_x);
  CHECK(a.nodes == b.nodes);
  auto c = certify({SeriesClass::Full}, x0_two_pow_23(), 1.0 / 1024);
  auto d = certify({SeriesClass::Full}, x0_two_pow_23(), 1.0 / 1024);
  CHECK(c.cell_digest == d.cell_digest);
  CHECK(c.nodes == d.nodes);
}
