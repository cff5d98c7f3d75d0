#include "gmf/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace gmf {

double admissibility(const Point& x, ConeVariant variant) {
  const double cap = variant == ConeVariant::Reduced ? 0.5 : 1.0;
  const double n = x.norm();
  if (n == 0.0) return cap;
  return std::min(cap, 1.0 / n);
}

bool cone_contains(const ConeSpec& cone, const Point& x, const Point& y, double t) {
  require_same_dim(x, y);
  if (!(t > 0.0)) throw std::invalid_argument("cone_contains: t must be positive");
  const bool reduced = cone.variant == ConeVariant::Reduced;
  const double A = reduced ? 1.0 : cone.aperture;
  const double a = reduced ? 1.0 : cone.cutoff;
  const double m = admissibility(x, cone.variant);
  return dist(x, y) < A * t && t <= a * m;
}

int annulus_index(const Point& y, double t, const Point& xi) {
  if (!(t > 0.0)) throw std::invalid_argument("annulus_index: t must be positive");
  const double r = dist(y, xi);
  if (r < 2.0 * t) return 0;
  int k = std::max(1, static_cast<int>(std::floor(std::log2(r / t))));
  while (std::ldexp(t, k + 1) <= r) ++k;
  while (k > 1 && std::ldexp(t, k) > r) --k;
  return k;
}

int dyadic_cover_index(double aperture) {
  if (!(aperture > 0.0) || !std::isfinite(aperture))
    throw std::invalid_argument("dyadic_cover_index: aperture must be positive");
  int k = 0;
  while (std::ldexp(1.0, k + 1) < aperture) ++k;
  return k;
}

BallSpec enclosing_ball(const Point& x, double t, int k, double aperture) {
  if (!(t > 0.0)) throw std::invalid_argument("enclosing_ball: t must be positive");
  if (k < 0) throw std::invalid_argument("enclosing_ball: k must be nonnegative");
  const int K = dyadic_cover_index(aperture);
  const double radius = k >= K ? std::ldexp(t, k + 2) : 2.0 * aperture * t;
  return BallSpec(x, radius);
}

}  // namespace gmf
