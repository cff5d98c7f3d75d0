#pragma once

#include "gmf/point.hpp"

namespace gmf {

enum class ConeVariant { Full, Reduced };

// Cone over a base point x: pairs (y, t) with |x - y| < A t and t <= a m(x).
// The Reduced variant fixes A = a = 1 and uses the smaller cut-off function
// min{1/2, 1/|x|} in place of m.
struct ConeSpec {
  double aperture = 1.0;  // A
  double cutoff = 1.0;    // a
  ConeVariant variant = ConeVariant::Full;

  ConeSpec() = default;
  ConeSpec(double A, double a, ConeVariant v = ConeVariant::Full) : aperture(A), cutoff(a), variant(v) {
    if (!(A > 0.0) || !(a > 0.0)) throw std::invalid_argument("ConeSpec: aperture and cutoff must be positive");
  }
  static ConeSpec reduced() {
    ConeSpec c;
    c.variant = ConeVariant::Reduced;
    return c;
  }
};

// m(x) = min{1, 1/|x|} for the full cone, min{1/2, 1/|x|} for the reduced one.
double admissibility(const Point& x, ConeVariant variant);

// Strict on the lateral bound |x - y| < A t, non-strict on the height t <= a m(x).
bool cone_contains(const ConeSpec& cone, const Point& x, const Point& y, double t);

// k = 0 iff |y - xi| < 2t, otherwise the unique k >= 1 with
// 2^k t <= |y - xi| < 2^{k+1} t.
int annulus_index(const Point& y, double t, const Point& xi);

// Smallest K >= 0 with 2^{K+1} >= aperture; comparisons done on exact powers
// of two so dyadic apertures land on the right side.
int dyadic_cover_index(double aperture);

// Ball around x that contains the k-th annulus of any cone point (y, t):
// radius 2^{k+2} t for k >= K(aperture), else 2 A t.
BallSpec enclosing_ball(const Point& x, double t, int k, double aperture);

}  // namespace gmf
