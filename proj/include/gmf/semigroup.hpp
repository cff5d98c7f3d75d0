#pragma once

#include "gmf/point.hpp"
#include "gmf/quadrature.hpp"
#include "gmf/test_function.hpp"

namespace gmf {

// Physicists' Hermite polynomial H_n by the three-term recurrence.
double hermite_poly(int n, double s);

enum class OuMethod { Substitution, Kernel };

struct SemigroupEval {
  double value = 0.0;
  double s = 0.0;
  Point y;
  OuMethod method = OuMethod::Substitution;
  double est_error = 0.0;
};

struct OuParams {
  int order = 32;     // Substitution: Gauss-Hermite order
  double tol = 1e-8;  // Kernel: adaptive cubature tolerance
  bool with_error_estimate = true;
};

// e^{sL} u (y).
//
// Substitution: the kernel integral rewritten as
//   pi^{-d/2} int e^{-|z|^2} u(e^{-s} y + sqrt(1 - e^{-2s}) z) dz
// and evaluated by a Gauss-Hermite rule; exact on polynomials of per-axis
// degree <= 2 order - 1. Kernel: adaptive integration of M_s(y,.) u dgamma
// over the support of u; exists as an independent cross-check of the Mehler
// formulas. For s <= 1e-8 both return u(y), the identity limit.
SemigroupEval ou_apply(const TestFunction& u, double s, const Point& y, OuMethod method,
                       const OuParams& params = {});

// (1/2) Laplacian u (x) - <x, grad u(x)> from closed-form derivatives.
double ou_generator(const TestFunction& u, const Point& x);

// Cached gamma-normalized Gauss-Hermite rule.
const QuadratureRule& hermite_rule_cached(int order, int dim);

}  // namespace gmf
