#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gmf/maximal.hpp"
#include "gmf/quadrature.hpp"
#include "gmf/rng.hpp"
#include "gmf/semigroup.hpp"
#include "gmf/special.hpp"

using namespace gmf;

namespace {

// dense-r oracle for the ball average of an indicator in d = 1, using the
// erf closed forms for numerator and denominator
double hl_indicator_oracle_1d(double center, double rho, double x, int grid) {
  const double rstar = std::fabs(x - center) + std::fabs(center) + rho;
  double best = 0.0;
  for (int i = 1; i <= grid; ++i) {
    const double r = rstar * static_cast<double>(i) / grid;
    const double lo = std::max(x - r, center - rho), hi = std::min(x + r, center + rho);
    const double num = hi > lo ? 0.5 * (special::erf(hi) - special::erf(lo)) : 0.0;
    const double den = 0.5 * (special::erf(x + r) - special::erf(x - r));
    best = std::max(best, num / den);
  }
  return best;
}

}  // namespace

TEST_CASE("hl of a centered indicator is exactly one at the center") {
  const TestFunction ind = TestFunction::ball_indicator(Point{0.0}, 1.0);
  const MaximalResult res = hl_maximal(ind, Point{0.0});
  CHECK(res.value == doctest::Approx(1.0).epsilon(1e-9));
  // averages of a 0/1 shape never exceed one
  SampleStream rng(67, 0, 0);
  for (int i = 0; i < 12; ++i) {
    const Point x{rng.uniform(-3.0, 3.0)};
    CHECK(hl_maximal(ind, x).value <= 1.0 + 1e-9);
  }
}

TEST_CASE("hl honors the continuity lower bound") {
  const TestFunction bump = TestFunction::gaussian_bump(Point{0.0}, 0.5);
  for (double xv : {-1.2, 0.0, 0.3, 2.0}) {
    const Point x{xv};
    CHECK(hl_maximal(bump, x).value >= bump.eval(x) - 1e-3);
  }
}

TEST_CASE("hl against the dense-grid oracle") {
  const TestFunction ind = TestFunction::ball_indicator(Point{0.0}, 1.0);
  const MaximalResult res = hl_maximal(ind, Point{2.0});
  const double oracle = hl_indicator_oracle_1d(0.0, 1.0, 2.0, 10000);
  CHECK(std::fabs(res.value - oracle) <= 1e-4 * oracle);
  // refinement settles
  REQUIRE(!res.refine_deltas.empty());
  CHECK(res.refine_deltas.back() <= 1e-4 * (1.0 + res.value));
}

TEST_CASE("refinement deltas taper off") {
  const std::vector<TestFunction> corpus = {
      TestFunction::ball_indicator(Point{0.0}, 1.0),
      TestFunction::gaussian_bump(Point{0.0}, 0.5),
      TestFunction::gaussian_bump(Point{1.5}, 0.3),
  };
  for (const auto& u : corpus) {
    for (double xv : {-1.0, 0.7, 2.0}) {
      const Point x{xv};
      const MaximalResult h = hl_maximal(u, x);
      const MaximalResult n = nt_maximal(u, x, ConeSpec(1.0, 1.0));
      for (const auto* res : {&h, &n}) {
        REQUIRE(!res->refine_deltas.empty());
        // incumbents only improve, late rounds improve less than early ones,
        // and the last round has settled
        double early = 0.0, late = 0.0;
        const std::size_t half = res->refine_deltas.size() / 2;
        for (std::size_t i = 0; i < res->refine_deltas.size(); ++i) {
          CHECK(res->refine_deltas[i] >= -1e-15);
          (i < half ? early : late) = std::max(i < half ? early : late, res->refine_deltas[i]);
        }
        CHECK(late <= early + 1e-6 * (1.0 + res->value));
        CHECK(res->refine_deltas.back() <= 1e-4 * (1.0 + res->value));
      }
    }
  }
}

TEST_CASE("hl rejects unbounded support") {
  CHECK_THROWS_AS(hl_maximal(TestFunction::hermite({2}), Point{0.0}), std::invalid_argument);
  CHECK_THROWS_AS(hl_maximal(TestFunction::constant(1, 1.0), Point{0.0}), std::invalid_argument);
}

TEST_CASE("nt of the constant is one") {
  const TestFunction one = TestFunction::constant(1, 1.0);
  for (double xv : {0.0, 1.0, -2.5}) {
    const MaximalResult res = nt_maximal(one, Point{xv}, ConeSpec(1.0, 1.0));
    CHECK(res.value == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("nt against the dense-grid oracle") {
  const TestFunction bump = TestFunction::gaussian_bump(Point{0.0}, 0.5);
  const Point x{0.7};
  const MaximalResult res = nt_maximal(bump, x, ConeSpec(1.0, 1.0));

  // 200 x 200 dense (y, t) grid at a higher quadrature order
  const double t_hi = admissibility(x, ConeVariant::Full);
  double oracle = bump.eval(x);
  const OuParams op{64, 1e-8, false};
  for (int i = 0; i < 200; ++i) {
    const double t = 1e-4 + (t_hi - 1e-4) * static_cast<double>(i) / 199;
    for (int j = 0; j < 200; ++j) {
      const double y = x[0] - t + 2.0 * t * static_cast<double>(j) / 199;
      oracle = std::max(oracle, std::fabs(ou_apply(bump, t * t, Point{y}, OuMethod::Substitution, op).value));
    }
  }
  CHECK(std::fabs(res.value - oracle) <= 1e-3 * oracle);
  CHECK(res.refine_deltas.back() <= 1e-4 * (1.0 + res.value));
}

TEST_CASE("cone monotonicity of nt") {
  SampleStream rng(71, 1, 0);
  const std::vector<TestFunction> corpus = {
      TestFunction::ball_indicator(Point{0.0}, 1.0),
      TestFunction::gaussian_bump(Point{1.5}, 0.3),
  };
  const SearchParams fast{16, 4, 0.35, 1e-4};
  for (const auto& u : corpus) {
    for (double xv : {-2.0, -0.5, 0.0, 1.0, 2.5}) {
      const Point x{xv};
      // the three searches discretize independently, so the subset ordering
      // holds up to the search resolution
      const double small = nt_maximal(u, x, ConeSpec(1.0, 1.0), fast, 24).value;
      const double large = nt_maximal(u, x, ConeSpec(2.0, 2.0), fast, 24).value;
      CHECK(small <= large * (1.0 + 1e-3) + 1e-12);
      const double reduced = nt_maximal(u, x, ConeSpec::reduced(), fast, 24).value;
      CHECK(reduced <= small * (1.0 + 1e-3) + 1e-12);
    }
  }
}

TEST_CASE("maximal operators are exactly positively homogeneous") {
  const TestFunction ind = TestFunction::ball_indicator(Point{0.5}, 0.8);
  const TestFunction scaled = ind.scaled(3.0);
  const Point x{1.4};
  const MaximalResult h1 = hl_maximal(ind, x);
  const MaximalResult h3 = hl_maximal(scaled, x);
  CHECK(h3.value == 3.0 * h1.value);
  CHECK(h3.argmax_t == h1.argmax_t);

  const SearchParams fast{16, 4, 0.35, 1e-4};
  const MaximalResult n1 = nt_maximal(ind, x, ConeSpec(1.0, 1.0), fast, 24);
  const MaximalResult n3 = nt_maximal(scaled, x, ConeSpec(1.0, 1.0), fast, 24);
  CHECK(n3.value == 3.0 * n1.value);
  CHECK(n3.argmax_t == n1.argmax_t);
  CHECK((n3.value / h3.value) == (n1.value / h1.value));
}

TEST_CASE("coordinate permutation invariance in d = 2") {
  const TestFunction bump = TestFunction::gaussian_bump(Point{0.3, -0.8}, 0.6);
  const TestFunction bump_swapped = TestFunction::gaussian_bump(Point{-0.8, 0.3}, 0.6);
  const Point x{0.5, 0.2}, x_swapped{0.2, 0.5};
  const SearchParams fast{16, 4, 0.35, 1e-4};

  // the integrator slices along the last axis, so hl matches only to its
  // cubature tolerance under the swap
  const double hl_a = hl_maximal(bump, x, fast).value;
  const double hl_b = hl_maximal(bump_swapped, x_swapped, fast).value;
  CHECK(hl_a == doctest::Approx(hl_b).epsilon(1e-7));

  const double nt_a = nt_maximal(bump, x, ConeSpec(1.0, 1.0), fast, 16).value;
  const double nt_b = nt_maximal(bump_swapped, x_swapped, ConeSpec(1.0, 1.0), fast, 16).value;
  CHECK(nt_a == doctest::Approx(nt_b).epsilon(1e-12));
}

TEST_CASE("search parameter validation") {
  SearchParams bad;
  bad.coarse_grid = 4;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = SearchParams{};
  bad.shrink = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = SearchParams{};
  bad.t_floor = 0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = SearchParams{};
  bad.refine_rounds = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
