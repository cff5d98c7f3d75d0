#include "gmf/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

#include "gmf/special.hpp"

namespace gmf {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kSqrtPi = 1.77245385090551602729816748334;

// Nodes and weights of the n-point Gauss-Hermite rule for weight e^{-s^2},
// by Newton iteration on the orthonormal recurrence. Weights come out with
// total mass sqrt(pi).
void hermite_nodes_1d(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  const double pim4 = 0.75112554446494248285870300478;  // pi^{-1/4}
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0)
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    else if (i == 1)
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    else if (i == 2)
      z = 1.86 * z - 0.86 * x[0];
    else if (i == 3)
      z = 1.91 * z - 0.91 * x[1];
    else
      z = 2.0 * z - x[static_cast<std::size_t>(i - 2)];

    const bool central = 2 * i == n - 1;
    double pp = 0.0;
    int settled = 0;
    for (int iter = 0; iter < 200; ++iter) {
      if (central) z = 0.0;
      double p1 = pim4, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double dz = p1 / pp;
      z -= dz;
      if (central) break;
      if (std::fabs(dz) <= 1e-13 * std::max(1.0, std::fabs(z)) && ++settled >= 3) break;
    }
    if (central) z = 0.0;
    x[static_cast<std::size_t>(i)] = z;
    x[static_cast<std::size_t>(n - 1 - i)] = z == 0.0 ? 0.0 : -z;
    w[static_cast<std::size_t>(i)] = 2.0 / (pp * pp);
    w[static_cast<std::size_t>(n - 1 - i)] = w[static_cast<std::size_t>(i)];
  }
}

void legendre_nodes_1d(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    const bool central = 2 * i == n - 1;
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      if (central) z = 0.0;
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (central || std::fabs(dz) <= 1e-15) break;
    }
    if (central) z = 0.0;
    x[static_cast<std::size_t>(i)] = z == 0.0 ? 0.0 : -z;
    x[static_cast<std::size_t>(n - 1 - i)] = z;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[static_cast<std::size_t>(n - 1 - i)] = w[static_cast<std::size_t>(i)];
  }
}

}  // namespace

const PanelRule& legendre_panel(int order) {
  static std::map<int, PanelRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) {
    PanelRule r;
    legendre_nodes_1d(order, r.nodes, r.weights);
    it = cache.emplace(order, std::move(r)).first;
  }
  return it->second;
}

QuadratureRule hermite_rule(int order, int dim) {
  if (order < 1 || order > 200) throw std::invalid_argument("hermite_rule: order must be in 1..200");
  if (dim < 1 || dim > 3) throw std::invalid_argument("hermite_rule: dim must be in 1..3");

  std::vector<double> x1, w1;
  hermite_nodes_1d(order, x1, w1);
  // gamma-normalize: the e^{-s^2} weights total sqrt(pi)
  double total = 0.0;
  for (double& wi : w1) {
    wi /= kSqrtPi;
    total += wi;
  }
  for (double& wi : w1) wi /= total;

  QuadratureRule rule;
  rule.order = order;
  rule.dim = dim;
  const std::size_t n = static_cast<std::size_t>(order);
  std::size_t count = n;
  for (int i = 1; i < dim; ++i) count *= n;
  rule.nodes.reserve(count);
  rule.weights.reserve(count);

  std::array<std::size_t, 3> idx{0, 0, 0};
  for (std::size_t flat = 0; flat < count; ++flat) {
    std::size_t rem = flat;
    Point p(dim);
    double w = 1.0;
    for (int axis = 0; axis < dim; ++axis) {
      idx[static_cast<std::size_t>(axis)] = rem % n;
      rem /= n;
      p.set(axis, x1[idx[static_cast<std::size_t>(axis)]]);
      w *= w1[idx[static_cast<std::size_t>(axis)]];
    }
    rule.nodes.push_back(p);
    rule.weights.push_back(w);
  }
  return rule;
}

double integrate_gamma(const std::function<double(const Point&)>& f, const QuadratureRule& rule) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = f(rule.nodes[i]);
    if (!std::isfinite(v)) throw std::runtime_error("integrate_gamma: non-finite integrand value at a node");
    sum += rule.weights[i] * v;
  }
  return sum;
}

double integrate_gamma(const TestFunction& f, const QuadratureRule& rule) {
  if (f.dim() != rule.dim) throw std::invalid_argument("integrate_gamma: dimension mismatch");
  return integrate_gamma([&](const Point& p) { return f.eval(p); }, rule);
}

double gamma_density(const Point& x) {
  return std::exp(-x.norm2() - 0.5 * x.dim() * std::log(kPi));
}

BallMeasure gamma_ball(const BallSpec& ball) {
  const double q = 2.0 * ball.radius * ball.radius;
  const double lambda = 2.0 * ball.center.norm2();
  return {ball, special::noncentral_chi2_cdf(ball.center.dim(), lambda, q)};
}

// ---------------------------------------------------------------------------
// Region cubature
// ---------------------------------------------------------------------------

namespace {

enum class SphereClass { Outside, Inside, Straddle };

struct Cell {
  std::array<double, 3> lo{{0, 0, 0}};
  std::array<double, 3> hi{{0, 0, 0}};
  double value = 0.0;
  double est = 0.0;
  bool straddle = false;
  bool dead = false;       // entirely outside the region
  bool evaluated = false;
  bool alive = true;
};

struct RegionCtx {
  const std::function<double(const Point&)>* integrand = nullptr;
  const RegionSpec* region = nullptr;
  int dim = 1;
  std::vector<BallSpec> section_spheres;  // outer + hole + jumps
};

SphereClass classify_cell(const Cell& c, int dim, const Point& center, double radius) {
  double dmin2 = 0.0, dmax2 = 0.0;
  for (int i = 0; i < dim; ++i) {
    const double lo = c.lo[static_cast<std::size_t>(i)] - center[i];
    const double hi = c.hi[static_cast<std::size_t>(i)] - center[i];
    const double lo2 = lo * lo, hi2 = hi * hi;
    dmax2 += std::max(lo2, hi2);
    if (lo > 0.0)
      dmin2 += lo2;
    else if (hi < 0.0)
      dmin2 += hi2;
  }
  const double r2 = radius * radius;
  if (dmin2 >= r2) return SphereClass::Outside;
  if (dmax2 <= r2) return SphereClass::Inside;
  return SphereClass::Straddle;
}

double eval_checked(const RegionCtx& ctx, const Point& p) {
  const double v = (*ctx.integrand)(p);
  if (!std::isfinite(v)) throw std::runtime_error("integrate_region: non-finite integrand value");
  return v;
}

// plain tensor Gauss-Legendre panel over the whole cell
double smooth_panel(const Cell& c, const RegionCtx& ctx, int order) {
  const PanelRule& gl = legendre_panel(order);
  const int dim = ctx.dim;
  const std::size_t n = gl.nodes.size();
  std::size_t count = n;
  for (int i = 1; i < dim; ++i) count *= n;

  std::array<double, 3> mid{{0, 0, 0}}, half{{0, 0, 0}};
  double jac = 1.0;
  for (int i = 0; i < dim; ++i) {
    mid[static_cast<std::size_t>(i)] = 0.5 * (c.lo[static_cast<std::size_t>(i)] + c.hi[static_cast<std::size_t>(i)]);
    half[static_cast<std::size_t>(i)] = 0.5 * (c.hi[static_cast<std::size_t>(i)] - c.lo[static_cast<std::size_t>(i)]);
    jac *= half[static_cast<std::size_t>(i)];
  }

  double sum = 0.0;
  Point p(dim);
  for (std::size_t flat = 0; flat < count; ++flat) {
    std::size_t rem = flat;
    double w = 1.0;
    for (int axis = 0; axis < dim; ++axis) {
      const std::size_t j = rem % n;
      rem /= n;
      p.set(axis, mid[static_cast<std::size_t>(axis)] + half[static_cast<std::size_t>(axis)] * gl.nodes[j]);
      w *= gl.weights[j];
    }
    sum += w * eval_checked(ctx, p);
  }
  return sum * jac;
}

// Integral along the last axis at fixed outer coordinates, with exact
// breakpoints where the region or jump spheres cross the line. Membership of
// each section is decided at its midpoint; Gauss-Legendre nodes are interior
// so jump values are never sampled on a boundary.
double section_integral(Point& p, double zlo, double zhi, const RegionCtx& ctx, int order) {
  const int zax = ctx.dim - 1;
  const RegionSpec& rg = *ctx.region;

  std::array<double, 16> bp{};
  std::size_t nbp = 0;
  bp[nbp++] = zlo;
  bp[nbp++] = zhi;
  for (const auto& sph : ctx.section_spheres) {
    double rho2 = 0.0;
    for (int i = 0; i < zax; ++i) {
      const double e = p[i] - sph.center[i];
      rho2 += e * e;
    }
    const double w2 = sph.radius * sph.radius - rho2;
    if (w2 <= 0.0) continue;
    const double w = std::sqrt(w2);
    const double a = sph.center[zax] - w;
    const double b = sph.center[zax] + w;
    if (a > zlo && a < zhi && nbp < bp.size()) bp[nbp++] = a;
    if (b > zlo && b < zhi && nbp < bp.size()) bp[nbp++] = b;
  }
  std::sort(bp.begin(), bp.begin() + nbp);

  const PanelRule& gl = legendre_panel(order);
  const double r2out = rg.outer.radius * rg.outer.radius;
  const double r2in = rg.inner_radius * rg.inner_radius;

  double sum = 0.0;
  for (std::size_t s = 0; s + 1 < nbp; ++s) {
    const double a = bp[s], b = bp[s + 1];
    if (!(b > a)) continue;
    p.set(zax, 0.5 * (a + b));
    const double d2 = dist2(p, rg.outer.center);
    if (d2 >= r2out || d2 < r2in) continue;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double part = 0.0;
    for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
      p.set(zax, mid + half * gl.nodes[j]);
      part += gl.weights[j] * eval_checked(ctx, p);
    }
    sum += part * half;
  }
  return sum;
}

// Sliced evaluation of a straddle cell. Leading axes are integrated by
// Gauss-Legendre panels subdivided at the abscissae where the section
// topology of any deeper axis changes (sphere tangencies and crossings of
// the cell faces); the last axis gets exact sphere sections. Keeping every
// panel on a piece where the inner map is smooth is what makes the paired
// low/high order error estimate trustworthy near tangencies.
double nested_slice(Point& p, const Cell& c, int axis, const RegionCtx& ctx, int gl_order,
                    int section_order) {
  const int dim = ctx.dim;
  if (axis == dim - 1)
    return section_integral(p, c.lo[static_cast<std::size_t>(axis)], c.hi[static_cast<std::size_t>(axis)], ctx,
                            section_order);

  const double lo = c.lo[static_cast<std::size_t>(axis)], hi = c.hi[static_cast<std::size_t>(axis)];
  std::array<double, 64> bp{};
  std::size_t nbp = 0;
  bp[nbp++] = lo;
  bp[nbp++] = hi;
  for (const auto& sph : ctx.section_spheres) {
    double prefix2 = 0.0;
    for (int j = 0; j < axis; ++j) {
      const double e = p[j] - sph.center[j];
      prefix2 += e * e;
    }
    const double base = sph.radius * sph.radius - prefix2;
    if (base <= 0.0) continue;
    int combos = 1;
    for (int j = axis + 1; j < dim; ++j) combos *= 3;
    for (int code = 0; code < combos; ++code) {
      int rem = code;
      double off2 = 0.0;
      for (int j = axis + 1; j < dim; ++j) {
        const int pick = rem % 3;
        rem /= 3;
        if (pick == 1) {
          const double e = c.lo[static_cast<std::size_t>(j)] - sph.center[j];
          off2 += e * e;
        } else if (pick == 2) {
          const double e = c.hi[static_cast<std::size_t>(j)] - sph.center[j];
          off2 += e * e;
        }
      }
      const double v = base - off2;
      if (v <= 0.0) continue;
      const double w = std::sqrt(v);
      const double ka = sph.center[axis] - w, kb = sph.center[axis] + w;
      if (ka > lo && ka < hi && nbp < bp.size()) bp[nbp++] = ka;
      if (kb > lo && kb < hi && nbp < bp.size()) bp[nbp++] = kb;
    }
  }
  std::sort(bp.begin(), bp.begin() + nbp);

  const PanelRule& gl = legendre_panel(gl_order);
  double sum = 0.0;
  for (std::size_t s = 0; s + 1 < nbp; ++s) {
    const double a = bp[s], b = bp[s + 1];
    if (!(b > a)) continue;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double piece = 0.0;
    for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
      p.set(axis, mid + half * gl.nodes[j]);
      piece += gl.weights[j] * nested_slice(p, c, axis + 1, ctx, gl_order, section_order);
    }
    sum += piece * half;
  }
  return sum;
}

double sliced_panel(const Cell& c, const RegionCtx& ctx, int outer_order, int section_order) {
  Point p(ctx.dim);
  return nested_slice(p, c, 0, ctx, outer_order, section_order);
}

void evaluate_cell(Cell& c, const RegionCtx& ctx) {
  c.evaluated = true;
  const RegionSpec& rg = *ctx.region;
  const int dim = ctx.dim;

  const SphereClass co = classify_cell(c, dim, rg.outer.center, rg.outer.radius);
  if (co == SphereClass::Outside) {
    c.dead = true;
    c.value = c.est = 0.0;
    return;
  }
  bool straddle = co == SphereClass::Straddle;
  if (rg.inner_radius > 0.0) {
    const SphereClass ci = classify_cell(c, dim, rg.outer.center, rg.inner_radius);
    if (ci == SphereClass::Inside) {
      c.dead = true;
      c.value = c.est = 0.0;
      return;
    }
    if (ci == SphereClass::Straddle) straddle = true;
  }
  for (const auto& js : rg.jumps)
    if (classify_cell(c, dim, js.center, js.radius) == SphereClass::Straddle) straddle = true;

  c.straddle = straddle;
  if (!straddle) {
    const double hi = smooth_panel(c, ctx, 10);
    const double lo = smooth_panel(c, ctx, 7);
    c.value = hi;
    c.est = std::fabs(hi - lo);
  } else {
    const double hi = sliced_panel(c, ctx, 10, 15);
    const double lo = sliced_panel(c, ctx, 7, 7);
    c.value = hi;
    c.est = std::fabs(hi - lo);
  }
}

}  // namespace

CubatureResult integrate_region(const std::function<double(const Point&)>& integrand,
                                const RegionSpec& region, double tol, long cell_cap) {
  if (!(tol >= 1e-12)) throw std::invalid_argument("integrate_region: tol must be >= 1e-12");
  if (region.inner_radius < 0.0 || (region.inner_radius > 0.0 && region.inner_radius >= region.outer.radius))
    throw std::invalid_argument("integrate_region: inner radius must be in [0, outer radius)");
  const int dim = region.outer.center.dim();
  for (const auto& js : region.jumps) require_same_dim(js.center, region.outer.center);

  RegionCtx ctx;
  ctx.integrand = &integrand;
  ctx.region = &region;
  ctx.dim = dim;
  ctx.section_spheres.push_back(region.outer);
  if (region.inner_radius > 0.0) ctx.section_spheres.emplace_back(region.outer.center, region.inner_radius);
  for (const auto& js : region.jumps) ctx.section_spheres.push_back(js);

  std::vector<Cell> cells;
  {
    Cell root;
    for (int i = 0; i < dim; ++i) {
      root.lo[static_cast<std::size_t>(i)] = region.outer.center[i] - region.outer.radius;
      root.hi[static_cast<std::size_t>(i)] = region.outer.center[i] + region.outer.radius;
    }
    cells.push_back(root);
  }

  const double budget = 0.5 * tol;
  for (int wave = 0; wave < 200; ++wave) {
    for (auto& c : cells)
      if (c.alive && !c.evaluated) evaluate_cell(c, ctx);

    double s_smooth = 0.0, s_straddle = 0.0;
    long n_smooth = 0, n_straddle = 0;
    for (const auto& c : cells) {
      if (!c.alive || c.dead || c.est <= 0.0) continue;
      if (c.straddle) {
        s_straddle += c.est;
        ++n_straddle;
      } else {
        s_smooth += c.est;
        ++n_smooth;
      }
    }
    const bool smooth_ok = s_smooth <= budget || n_smooth == 0;
    const bool straddle_ok = s_straddle <= budget || n_straddle == 0;
    if (smooth_ok && straddle_ok) break;

    const double thresh_smooth = smooth_ok ? std::numeric_limits<double>::infinity()
                                           : s_smooth / (2.0 * static_cast<double>(n_smooth));
    const double thresh_straddle = straddle_ok ? std::numeric_limits<double>::infinity()
                                               : s_straddle / (2.0 * static_cast<double>(n_straddle));

    const std::size_t current = cells.size();
    for (std::size_t i = 0; i < current; ++i) {
      Cell& c = cells[i];
      if (!c.alive || c.dead || c.est <= 0.0) continue;
      const double thresh = c.straddle ? thresh_straddle : thresh_smooth;
      if (c.est < thresh) continue;
      int axis = 0;
      double width = c.hi[0] - c.lo[0];
      for (int k = 1; k < dim; ++k) {
        const double w = c.hi[static_cast<std::size_t>(k)] - c.lo[static_cast<std::size_t>(k)];
        if (w > width) {
          width = w;
          axis = k;
        }
      }
      Cell left = c, right = c;
      left.evaluated = right.evaluated = false;
      left.alive = right.alive = true;
      left.dead = right.dead = false;
      const double mid = 0.5 * (c.lo[static_cast<std::size_t>(axis)] + c.hi[static_cast<std::size_t>(axis)]);
      left.hi[static_cast<std::size_t>(axis)] = mid;
      right.lo[static_cast<std::size_t>(axis)] = mid;
      c.alive = false;
      cells.push_back(left);
      cells.push_back(right);
    }
    if (static_cast<long>(cells.size()) > cell_cap)
      throw std::runtime_error("integrate_region: tolerance unreachable within the cell budget");
  }

  CubatureResult out;
  for (const auto& c : cells) {
    if (!c.alive || c.dead) continue;
    out.value += c.value;
    out.est_error += c.est;
    ++out.cells;
  }
  return out;
}

double integrate_ball(const TestFunction& f, const BallSpec& ball, double tol) {
  if (f.dim() != ball.center.dim()) throw std::invalid_argument("integrate_ball: dimension mismatch");
  if (!(tol >= 1e-12)) throw std::invalid_argument("integrate_ball: tol must be >= 1e-12");
  const double amp = f.amplitude();
  if (amp == 0.0) return 0.0;

  RegionSpec rs;
  rs.outer = ball;
  if (auto js = f.jump_sphere()) rs.jumps.push_back(*js);
  auto g = [&](const Point& p) { return f.unit_eval(p) * gamma_density(p); };
  return amp * integrate_region(g, rs, tol).value;
}

}  // namespace gmf
