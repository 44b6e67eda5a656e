#include <doctest.h>

#include <cmath>

#include "bernoulli/phi.hpp"

using namespace bernoulli;

TEST_CASE("mixture entropy limits") {
  // s = 0: a plain standard Gaussian
  MixtureEntropy m0 = mixture_entropy(0.0);
  double hg = gaussian_entropy();
  CHECK(m0.value.lo().to_double() <= hg);
  CHECK(m0.value.hi().to_double() >= hg);
  CHECK(m0.value.mid_d() == doctest::Approx(1.418938533204673).epsilon(1e-9));
  CHECK_FALSE(m0.widened);

  // s = 10: two far-separated bumps
  MixtureEntropy m10 = mixture_entropy(10.0);
  CHECK(m10.value.mid_d() == doctest::Approx(std::log(2.0) + hg).epsilon(1e-6));
  CHECK(m10.value.width_d() < 1e-6);

  // s = 1: strictly between the limits
  MixtureEntropy m1 = mixture_entropy(1.0);
  CHECK(m1.value.lo().to_double() > hg);
  CHECK(m1.value.hi().to_double() < std::log(2.0) + hg);

  CHECK_THROWS_AS(mixture_entropy(-1.0), std::invalid_argument);
}

TEST_CASE("mixture entropy is monotone and bounded on a grid") {
  double prev = gaussian_entropy() - 1e-12;
  for (double s : {0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 8.0, 20.0, 50.0}) {
    MixtureEntropy m = mixture_entropy(s);
    double mid = m.value.mid_d();
    CHECK(mid >= prev - 1e-9);
    CHECK(mid >= gaussian_entropy() - 1e-9);
    CHECK(mid <= std::log(2.0) + gaussian_entropy() + 1e-9);
    prev = mid;
  }
}

TEST_CASE("phi at 1 vanishes") {
  PhiEvaluation p1 = phi(1.0);
  CHECK(std::abs(p1.phi_lower.lo_d()) <= 1e-9);
  CHECK(std::abs(p1.phi_estimate) <= 1e-9);
  CHECK(p1.phi_lower.lo_d() >= 0.0);
}

TEST_CASE("phi lower bounds: monotone, below ln 2, approaching ln 2") {
  double prev = -1;
  for (double a : {1.0, 1.5, 2.0, 4.0, 10.0, 100.0}) {
    PhiEvaluation p = phi(a);
    double lo = p.phi_lower.lo_d();
    CHECK(lo >= prev - 2 * p.phi_lower.width_d());
    CHECK(lo >= 0.0);
    CHECK(p.phi_estimate <= std::log(2.0) + 1e-6);
    CHECK(p.phi_lower.hi_d() <= p.phi_estimate + 1e-9);
    prev = lo;
  }
  PhiEvaluation big = phi(1e6);
  CHECK(big.phi_lower.lo_d() >= 0.68);
  CHECK(big.phi_lower.lo_d() <= std::log(2.0));
}

TEST_CASE("phi(4) is certified with a narrow enclosure") {
  PhiEvaluation p = phi(4.0);
  CHECK(p.phi_lower.lo_d() > 0.0);
  CHECK(p.phi_lower.hi_d() < std::log(2.0));
  CHECK(p.phi_lower.width_d() <= 1e-3);
  CHECK_THROWS_AS(phi(0.5), std::invalid_argument);
}

TEST_CASE("capital C thresholds certify and re-verify") {
  for (double h : {0.1, 0.2, std::log(4.0 / 3.0)}) {
    ThresholdResult tr = capital_c(h);
    CHECK(tr.certified);
    // re-verify independently: Phi at the returned threshold clears h
    PhiEvaluation at = phi(tr.c_of_h.hi_d());
    CHECK(at.phi_lower.lo_d() >= h);
    CHECK(tr.c_of_h.lo_d() >= 1.0);
  }
}

TEST_CASE("capital C boundary behaviour") {
  // h near 0: the threshold collapses toward 1
  ThresholdResult small = capital_c(1e-6);
  CHECK(small.certified);
  CHECK(small.c_of_h.hi_d() <= 1.01);

  // h at or above ln 2 is unreachable
  CHECK_THROWS_AS(capital_c(0.70), std::invalid_argument);
  CHECK_THROWS_AS(capital_c(std::log(2.0)), std::invalid_argument);
  CHECK_THROWS_AS(capital_c(0.0), std::invalid_argument);
}
