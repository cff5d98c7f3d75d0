#pragma once

#include <functional>
#include <vector>

#include "gmf/point.hpp"
#include "gmf/test_function.hpp"

namespace gmf {

// Tensor Gauss-Hermite rule normalized against the Gaussian measure:
// sum_i w_i f(x_i) ~ integral of f dgamma, weights sum to 1.
struct QuadratureRule {
  std::vector<Point> nodes;
  std::vector<double> weights;
  int order = 0;
  int dim = 1;
};

QuadratureRule hermite_rule(int order, int dim);

double integrate_gamma(const std::function<double(const Point&)>& f, const QuadratureRule& rule);
double integrate_gamma(const TestFunction& f, const QuadratureRule& rule);

struct BallMeasure {
  BallSpec ball;
  double gamma_mass = 0.0;
};

// gamma(B_r(x)) through the noncentral chi-square identity: the squared
// distance of a gamma-distributed point from x, scaled by 2, is noncentral
// chi-square with d degrees of freedom and noncentrality 2|x|^2.
BallMeasure gamma_ball(const BallSpec& ball);

// Gaussian density pi^{-d/2} e^{-|x|^2}.
double gamma_density(const Point& x);

// ---------------------------------------------------------------------------
// Adaptive cubature over a ball or spherical shell.
//
// Tensor cells over the bounding box are classified against the region
// spheres and any declared discontinuity spheres of the integrand. Smooth
// cells get fixed-order product Gauss-Legendre panels; cells cut by a sphere
// are evaluated by slicing along the last axis with exact section endpoints
// at the sphere crossings. Refinement is wave-based: the error budget is
// split evenly between panel error and boundary-skin error, and within each
// wave the worst offenders are bisected. Results are summed in cell creation
// order.
// ---------------------------------------------------------------------------
struct RegionSpec {
  BallSpec outer;
  double inner_radius = 0.0;           // > 0 makes the region a shell
  std::vector<BallSpec> jumps;         // integrand discontinuity spheres
};

struct CubatureResult {
  double value = 0.0;
  double est_error = 0.0;
  long cells = 0;
};

// integrand is against Lebesgue measure (fold the Gaussian density in).
CubatureResult integrate_region(const std::function<double(const Point&)>& integrand,
                                const RegionSpec& region, double tol, long cell_cap = 1000000);

// integral of f dgamma over the ball, |error| <= tol on the unit-amplitude
// shape; the amplitude is factored out and applied once at the end.
double integrate_ball(const TestFunction& f, const BallSpec& ball, double tol);

// 1-d Gauss-Legendre panel on [-1,1]; orders are cached.
struct PanelRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const PanelRule& legendre_panel(int order);

}  // namespace gmf
