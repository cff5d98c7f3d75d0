#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gmf/geometry.hpp"
#include "gmf/kernel.hpp"
#include "gmf/rng.hpp"

using namespace gmf;

TEST_CASE("log1mexp branches and accuracy") {
  const double log2 = std::log(2.0);
  CHECK(log1mexp(log2) == doctest::Approx(-log2).epsilon(1e-15));
  // tiny s: 1 - e^{-s} = s (1 - s/2 + ...)
  const double s = 1e-8;
  CHECK(log1mexp(s) == doctest::Approx(std::log(s) + std::log1p(-0.5e-8)).epsilon(1e-14));
  // large s: log(1 - eps) ~ -eps
  CHECK(log1mexp(50.0) == doctest::Approx(-std::exp(-50.0)).epsilon(1e-10));
  CHECK_THROWS_AS(log1mexp(0.0), std::domain_error);
  CHECK_THROWS_AS(log1mexp(-1.0), std::domain_error);

  // against long-double evaluation across the range
  for (double e = -300.0; e <= 2.8; e += 0.25) {
    const double x = std::pow(10.0, e);
    if (x > 700.0) break;
    const long double ref = logl(-expm1l(-static_cast<long double>(x)));
    CHECK(std::fabs(log1mexp(x) - static_cast<double>(ref)) <=
          1e-14 * std::max(1.0, std::fabs(static_cast<double>(ref))));
  }
}

TEST_CASE("mehler log at the origin") {
  const LogValue lv = mehler_log(1.0, Point{0.0}, Point{0.0}, MehlerForm::Explicit);
  const double expect = -0.5 * std::log1p(-std::exp(-2.0));
  CHECK(lv.log_val == doctest::Approx(expect).epsilon(1e-14));
  CHECK(std::exp(lv.log_val) == doctest::Approx(1.075415102530025682835).epsilon(1e-13));
  const LogValue sv = mehler_log(1.0, Point{0.0}, Point{0.0}, MehlerForm::Symmetric);
  CHECK(sv.log_val == doctest::Approx(expect).epsilon(1e-13));
  CHECK_THROWS_AS(mehler_log(0.0, Point{0.0}, Point{0.0}, MehlerForm::Explicit), std::domain_error);
}

TEST_CASE("mehler symmetry and form equivalence") {
  SampleStream rng(17, 0, 0);
  for (int i = 0; i < 10000; ++i) {
    const int d = 1 + rng.uniform_int(3);
    const double t = std::exp(rng.uniform(std::log(1e-4), std::log(10.0)));
    const Point x = rng.uniform_ball(d, 5.0);
    const Point y = rng.uniform_ball(d, 5.0);
    const double sym_xy = mehler_log(t, x, y, MehlerForm::Symmetric).log_val;
    const double sym_yx = mehler_log(t, y, x, MehlerForm::Symmetric).log_val;
    CHECK(sym_xy == sym_yx);  // bitwise: every term is symmetric under the swap
    const double exp_xy = mehler_log(t, x, y, MehlerForm::Explicit).log_val;
    const double exp_yx = mehler_log(t, y, x, MehlerForm::Explicit).log_val;
    CHECK(std::fabs(exp_xy - exp_yx) <= 1e-12 * (1.0 + std::fabs(sym_xy)));
    CHECK(std::fabs(exp_xy - sym_xy) <= 1e-12 * (1.0 + std::fabs(sym_xy)));
    CHECK(std::isfinite(sym_xy));
  }
}

TEST_CASE("mehler small-t stability") {
  SampleStream rng(19, 1, 0);
  for (int i = 0; i < 200; ++i) {
    const int d = 1 + rng.uniform_int(3);
    const Point x = rng.uniform_ball(d, 5.0);
    const Point y = rng.uniform_ball(d, 5.0);
    for (MehlerForm form : {MehlerForm::Explicit, MehlerForm::Symmetric})
      CHECK(std::isfinite(mehler_log(1e-6, x, y, form).log_val));
  }
}

TEST_CASE("annulus kernel bound") {
  // |y| = 0 kills the growth factors
  const LogValue b = annulus_bound_log(1.0, Point{0.0}, 1, 1);
  const double expect = -0.5 * std::log1p(-std::exp(-2.0)) - 4.0 / (2.0 * std::exp(2.0));
  CHECK(b.log_val == doctest::Approx(expect).epsilon(1e-14));
  CHECK_THROWS_AS(annulus_bound_log(1.0, Point{0.0}, 0, 1), std::invalid_argument);

  // dominates the kernel on sampled shell points
  SampleStream rng(23, 2, 0);
  for (int i = 0; i < 100000; ++i) {
    const int d = 1 + rng.uniform_int(3);
    const Point y = rng.uniform_ball(d, 5.0);
    const double t = rng.uniform(1e-3, 1.0);
    const int k = 1 + rng.uniform_int(20);
    const double r = rng.uniform(std::ldexp(t, k), std::ldexp(t, k + 1));
    const Point dir = rng.uniform_dir(d);
    Point xi(d);
    for (int j = 0; j < d; ++j) xi.set(j, y[j] + r * dir[j]);
    if (annulus_index(y, t, xi) != k) continue;  // hit the right shell edge
    CHECK(mehler_log(t * t, y, xi).log_val <= annulus_bound_log(t, y, k, d).log_val + 1e-12);
  }

  // the 4^k term eventually wins at fixed (t, y)
  const Point y{1.3};
  double prev = annulus_bound_log(0.8, y, 1, 1).log_val;
  bool decreasing = false;
  for (int k = 2; k <= 20; ++k) {
    const double cur = annulus_bound_log(0.8, y, k, 1).log_val;
    if (decreasing) CHECK(cur < prev);
    if (cur < prev) decreasing = true;
    prev = cur;
  }
  CHECK(decreasing);
}

TEST_CASE("proof coefficients") {
  const ProofCoefficient c1 = proof_coefficient(1, 1.0, 1.0);
  CHECK(c1.log_ck == doctest::Approx(8.0 - 2.0 / std::exp(2.0)).epsilon(1e-15));

  // crossover at aperture = cutoff = 1: the decay wins from k = 6 on
  CHECK(proof_coefficient(5, 1.0, 1.0).log_ck > 0.0);
  CHECK(proof_coefficient(6, 1.0, 1.0).log_ck < 0.0);
  for (int k = 7; k <= 40; ++k)
    CHECK(proof_coefficient(k, 1.0, 1.0).log_ck < proof_coefficient(k - 1, 1.0, 1.0).log_ck);

  CHECK_THROWS_AS(proof_coefficient(0, 1.0, 1.0), std::invalid_argument);
}
