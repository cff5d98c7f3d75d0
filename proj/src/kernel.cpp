#include "gmf/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace gmf {

double log1mexp(double s) {
  if (!(s > 0.0)) throw std::domain_error("log1mexp: s must be positive");
  constexpr double kLog2 = 0.6931471805599453094172321;
  if (s <= kLog2) return std::log(-std::expm1(-s));
  return std::log1p(-std::exp(-s));
}

LogValue mehler_log(double t, const Point& x, const Point& y, MehlerForm form) {
  require_same_dim(x, y);
  if (!(t > 0.0)) throw std::domain_error("mehler_log: t must be positive");
  const double d = static_cast<double>(x.dim());
  const double q = std::exp(-t);

  if (form == MehlerForm::Explicit) {
    double num = 0.0;
    for (int i = 0; i < x.dim(); ++i) {
      const double e = q * x[i] - y[i];
      num += e * e;
    }
    const double one_m = -std::expm1(-2.0 * t);  // 1 - e^{-2t}
    return {-num / one_m - 0.5 * d * log1mexp(2.0 * t) + y.norm2()};
  }

  const double one_m = -std::expm1(-2.0 * t);
  return {-(q * q) * dist2(x, y) / one_m - 0.5 * d * log1mexp(t) +
          2.0 * q * dot(x, y) / (1.0 + q) - 0.5 * d * std::log1p(q)};
}

LogValue annulus_bound_log(double t, const Point& y, int k, int dim) {
  if (k < 1) throw std::invalid_argument("annulus_bound_log: stated for k >= 1 only");
  if (!(t > 0.0)) throw std::domain_error("annulus_bound_log: t must be positive");
  if (dim < 1 || dim > 3) throw std::invalid_argument("annulus_bound_log: dim must be in 1..3");
  const double decay = std::ldexp(1.0, 2 * k) / (2.0 * std::exp(2.0 * t * t));
  return {y.norm2() - 0.5 * dim * log1mexp(2.0 * t * t) + std::ldexp(t * y.norm(), k + 1) - decay};
}

ProofCoefficient proof_coefficient(int k, double aperture, double cutoff) {
  if (k < 1) throw std::invalid_argument("proof_coefficient: requires k >= 1");
  if (!(aperture > 0.0) || !(cutoff > 0.0))
    throw std::invalid_argument("proof_coefficient: aperture and cutoff must be positive");
  const double a = cutoff;
  const double grow = std::ldexp(a * (1.0 + a * aperture), k + 1);
  const double decay = std::ldexp(1.0, 2 * k) / (2.0 * std::exp(2.0 * a * a));
  return {k, aperture, cutoff, grow - decay};
}

}  // namespace gmf
