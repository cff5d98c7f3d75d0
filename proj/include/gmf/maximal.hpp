#pragma once

#include <vector>

#include "gmf/geometry.hpp"
#include "gmf/point.hpp"
#include "gmf/test_function.hpp"

namespace gmf {

struct SearchParams {
  int coarse_grid = 32;    // points per axis on the coarse stage
  int refine_rounds = 6;
  double shrink = 0.35;    // per-round contraction of the refinement box
  double t_floor = 1e-4;

  void validate() const;
};

struct MaximalResult {
  double value = 0.0;
  Point argmax_y;              // cone search: maximizing y
  double argmax_t = 0.0;       // cone search: t (0 encodes the t->0 boundary);
                               // ball search: maximizing radius
  std::vector<double> refine_deltas;
};

// Centered Gaussian Hardy-Littlewood maximal function at x:
//   sup_{r > 0} gamma(B_r(x))^{-1} int_{B_r(x)} |u| dgamma.
// Requires compact support; the supremum is then bracketed exactly on
// (0, r*] with r* = |x - support_center| + support_radius, since beyond r*
// the numerator is constant while the denominator keeps growing.
MaximalResult hl_maximal(const TestFunction& u, const Point& x, const SearchParams& search = {});

// Non-tangential maximal function over the cone at x:
//   sup over cone pairs (y, t) of |e^{t^2 L} u(y)|,
// with the t -> 0 boundary accounted for by |u(x)| at continuity points.
MaximalResult nt_maximal(const TestFunction& u, const Point& x, const ConeSpec& cone,
                         const SearchParams& search = {}, int order = 32);

}  // namespace gmf
