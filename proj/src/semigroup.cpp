#include "gmf/semigroup.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "gmf/kernel.hpp"

namespace gmf {

double hermite_poly(int n, double s) {
  if (n < 0) throw std::invalid_argument("hermite_poly: n must be nonnegative");
  double hm = 1.0;  // H_0
  if (n == 0) return hm;
  double h = 2.0 * s;  // H_1
  for (int j = 1; j < n; ++j) {
    const double next = 2.0 * s * h - 2.0 * j * hm;
    hm = h;
    h = next;
  }
  return h;
}

const QuadratureRule& hermite_rule_cached(int order, int dim) {
  static std::map<std::pair<int, int>, std::unique_ptr<QuadratureRule>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(order, dim);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<QuadratureRule>(hermite_rule(order, dim))).first;
  return *it->second;
}

namespace {

double substitution_sum(const TestFunction& u, double decay, double sigma, const Point& y,
                        const QuadratureRule& rule) {
  const int dim = y.dim();
  double sum = 0.0;
  Point p(dim);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const Point& z = rule.nodes[i];
    for (int k = 0; k < dim; ++k) p.set(k, decay * y[k] + sigma * z[k]);
    const double v = u.unit_eval(p);
    if (!std::isfinite(v)) throw std::runtime_error("ou_apply: non-finite value under the substitution rule");
    sum += rule.weights[i] * v;
  }
  return sum;
}

// Integration domain for the kernel path: the declared support when finite,
// otherwise a ball catching the mass of the transition density
// N(e^{-s} y, (1 - e^{-2s})/2 I).
BallSpec kernel_domain(const TestFunction& u, double decay, double sigma, const Point& y) {
  if (std::isfinite(u.support_extent())) return BallSpec(u.support_center(), u.support_extent());
  const int dim = y.dim();
  Point c(dim);
  for (int k = 0; k < dim; ++k) c.set(k, decay * y[k]);
  return BallSpec(c, 14.0 * std::max(sigma, 1e-8));
}

}  // namespace

SemigroupEval ou_apply(const TestFunction& u, double s, const Point& y, OuMethod method,
                       const OuParams& params) {
  if (!(s > 0.0)) throw std::domain_error("ou_apply: s must be positive");
  require_same_dim(u.support_center(), y);

  SemigroupEval out;
  out.s = s;
  out.y = y;
  out.method = method;

  // below quadrature resolvability the semigroup is the identity
  if (s <= 1e-8) {
    out.value = u.eval(y);
    out.est_error = 0.0;
    return out;
  }

  const double amp = u.amplitude();
  const double decay = std::exp(-s);
  const double sigma = std::sqrt(-std::expm1(-2.0 * s));

  if (method == OuMethod::Substitution) {
    if (params.order < 1 || params.order > 200)
      throw std::invalid_argument("ou_apply: order must be in 1..200");
    const double hi = substitution_sum(u, decay, sigma, y, hermite_rule_cached(params.order, y.dim()));
    out.value = amp * hi;
    if (params.with_error_estimate) {
      const int half = std::max(1, params.order / 2);
      const double lo = substitution_sum(u, decay, sigma, y, hermite_rule_cached(half, y.dim()));
      out.est_error = std::fabs(amp) * std::fabs(hi - lo) + 1e-13 * (1.0 + std::fabs(out.value));
    } else {
      out.est_error = 1e-13 * (1.0 + std::fabs(out.value));
    }
    return out;
  }

  RegionSpec rs;
  rs.outer = kernel_domain(u, decay, sigma, y);
  if (auto js = u.jump_sphere()) rs.jumps.push_back(*js);
  auto g = [&](const Point& xi) {
    const double uv = u.unit_eval(xi);
    if (uv == 0.0) return 0.0;
    return uv * std::exp(mehler_log(s, y, xi).log_val) * gamma_density(xi);
  };
  const CubatureResult res = integrate_region(g, rs, params.tol);
  out.value = amp * res.value;
  out.est_error = std::fabs(amp) * (params.tol + res.est_error);
  return out;
}

double ou_generator(const TestFunction& u, const Point& x) {
  if (!u.smooth()) throw std::domain_error("ou_generator: closed-form derivatives unavailable for this kind");
  require_same_dim(u.support_center(), x);
  const double lap = u.unit_laplacian(x);
  const Point grad = u.unit_gradient(x);
  return u.amplitude() * (0.5 * lap - dot(x, grad));
}

}  // namespace gmf
