#include "gmf/maximal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gmf/quadrature.hpp"
#include "gmf/semigroup.hpp"

namespace gmf {

void SearchParams::validate() const {
  if (coarse_grid < 8) throw std::invalid_argument("SearchParams: coarse_grid must be >= 8");
  if (refine_rounds < 2) throw std::invalid_argument("SearchParams: refine_rounds must be >= 2");
  if (!(shrink > 0.0 && shrink < 1.0)) throw std::invalid_argument("SearchParams: shrink must be in (0,1)");
  if (!(t_floor > 0.0 && t_floor <= 1e-3)) throw std::invalid_argument("SearchParams: t_floor must be in (0, 1e-3]");
}

namespace {

double ball_average_tol(int dim) {
  switch (dim) {
    case 1: return 1e-11;
    case 2: return 1e-9;
    default: return 1e-8;
  }
}

}  // namespace

MaximalResult hl_maximal(const TestFunction& u, const Point& x, const SearchParams& search) {
  search.validate();
  require_same_dim(u.support_center(), x);
  if (!std::isfinite(u.support_radius()))
    throw std::invalid_argument("hl_maximal: test function must be compactly supported");

  MaximalResult out;
  out.argmax_y = x;
  const double amp = std::fabs(u.amplitude());
  if (amp == 0.0) return out;
  const TestFunction shape = u.with_amplitude(1.0);

  const double rstar = dist(x, u.support_center()) + u.support_radius();
  const double tol = ball_average_tol(x.dim());
  RegionSpec rs;
  if (auto js = shape.jump_sphere()) rs.jumps.push_back(*js);
  auto average = [&](double r) {
    rs.outer = BallSpec(x, r);
    auto g = [&](const Point& p) { return std::fabs(shape.unit_eval(p)) * gamma_density(p); };
    const double num = integrate_region(g, rs, tol).value;
    return num / gamma_ball(rs.outer).gamma_mass;
  };

  // geometric coarse grid on (t_floor r*, r*]
  const int n = search.coarse_grid;
  const double r_lo = search.t_floor * rstar;
  const double ratio = std::pow(rstar / r_lo, 1.0 / (n - 1));
  double best_r = rstar, best_v = -1.0;
  for (int i = 0; i < n; ++i) {
    const double r = i == n - 1 ? rstar : r_lo * std::pow(ratio, i);
    const double v = average(r);
    if (v > best_v) {
      best_v = v;
      best_r = r;
    }
  }

  // golden-section refinement inside the neighbor bracket of the incumbent
  constexpr double kInvPhi = 0.61803398874989484820;
  double a = std::max(r_lo / ratio, best_r / ratio);
  double b = std::min(rstar, best_r * ratio);
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = average(c), fd = average(d);
  auto note = [&](double r, double v) {
    if (v > best_v) {
      best_v = v;
      best_r = r;
    }
  };
  note(c, fc);
  note(d, fd);
  for (int round = 0; round < search.refine_rounds; ++round) {
    const double before = best_v;
    for (int step = 0; step < 3; ++step) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kInvPhi * (b - a);
        fc = average(c);
        note(c, fc);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kInvPhi * (b - a);
        fd = average(d);
        note(d, fd);
      }
    }
    out.refine_deltas.push_back(best_v - before);
  }

  out.value = amp * best_v;
  out.argmax_t = best_r;
  return out;
}

MaximalResult nt_maximal(const TestFunction& u, const Point& x, const ConeSpec& cone,
                         const SearchParams& search, int order) {
  search.validate();
  require_same_dim(u.support_center(), x);
  const int dim = x.dim();

  const bool reduced = cone.variant == ConeVariant::Reduced;
  const double aperture = reduced ? 1.0 : cone.aperture;
  const double m = admissibility(x, cone.variant);
  const double t_hi = reduced ? m : cone.cutoff * m;
  const double t_lo = std::min(search.t_floor, 0.5 * t_hi);

  MaximalResult out;
  out.argmax_y = x;
  const double amp = std::fabs(u.amplitude());
  if (amp == 0.0) return out;
  const TestFunction shape = u.with_amplitude(1.0);

  double best_v = -1.0;
  Point best_y = x;
  double best_t = 0.0;
  // t -> 0 boundary of the open cone
  if (shape.continuous_at(x)) {
    best_v = std::fabs(shape.unit_eval(x));
  }

  OuParams op;
  op.order = order;
  op.with_error_estimate = false;
  auto value_at = [&](const Point& y, double t) {
    return std::fabs(ou_apply(shape, t * t, y, OuMethod::Substitution, op).value);
  };

  const double open_slack = 1.0 - 1e-12;  // keeps the lattice strictly inside |x-y| < A t
  auto scan_box = [&](double tmin, double tmax, const Point& yc, double yhalf, int nt, int ny,
                      bool geometric_t) {
    for (int it = 0; it < nt; ++it) {
      double t;
      if (nt == 1)
        t = tmax;
      else if (geometric_t)
        t = it == nt - 1 ? tmax : tmin * std::pow(tmax / tmin, static_cast<double>(it) / (nt - 1));
      else
        t = tmin + (tmax - tmin) * static_cast<double>(it) / (nt - 1);
      const double ext = aperture * t * open_slack;
      std::array<double, 3> lo{{0, 0, 0}}, hi{{0, 0, 0}};
      for (int k = 0; k < dim; ++k) {
        lo[static_cast<std::size_t>(k)] = std::max(yc[k] - yhalf, x[k] - ext);
        hi[static_cast<std::size_t>(k)] = std::min(yc[k] + yhalf, x[k] + ext);
        if (lo[static_cast<std::size_t>(k)] > hi[static_cast<std::size_t>(k)])
          lo[static_cast<std::size_t>(k)] = hi[static_cast<std::size_t>(k)] = std::clamp(
              yc[k], x[k] - ext, x[k] + ext);
      }
      std::size_t count = static_cast<std::size_t>(ny);
      for (int k = 1; k < dim; ++k) count *= static_cast<std::size_t>(ny);
      Point y(dim);
      for (std::size_t flat = 0; flat < count; ++flat) {
        std::size_t rem = flat;
        for (int k = 0; k < dim; ++k) {
          const std::size_t j = rem % static_cast<std::size_t>(ny);
          rem /= static_cast<std::size_t>(ny);
          const double w = hi[static_cast<std::size_t>(k)] - lo[static_cast<std::size_t>(k)];
          y.set(k, ny == 1 ? lo[static_cast<std::size_t>(k)]
                           : lo[static_cast<std::size_t>(k)] + w * static_cast<double>(j) / (ny - 1));
        }
        if (dim > 1 && dist(x, y) >= aperture * t * open_slack) continue;
        const double v = value_at(y, t);
        if (v > best_v) {
          best_v = v;
          best_y = y;
          best_t = t;
        }
      }
    }
  };

  // coarse stage: geometric t-grid, full-width lattice per t
  Point yc = x;
  scan_box(t_lo, t_hi, yc, std::numeric_limits<double>::infinity(), search.coarse_grid,
           search.coarse_grid, true);

  // local refinement: shrink the (y, t) box around the incumbent
  const double t_ratio = std::pow(t_hi / t_lo, 1.0 / (search.coarse_grid - 1));
  double tc = best_t > 0.0 ? best_t : t_lo;
  double th = tc * (t_ratio - 1.0);
  Point ycen = best_t > 0.0 ? best_y : x;
  double yh = 3.0 * aperture * tc / (search.coarse_grid - 1);
  const int ng = std::max(8, search.coarse_grid / 4);
  for (int round = 0; round < search.refine_rounds; ++round) {
    const double before = best_v;
    scan_box(std::max(t_lo, tc - th), std::min(t_hi, tc + th), ycen, yh, ng, ng, false);
    out.refine_deltas.push_back(best_v - before);
    if (best_t > 0.0) {
      tc = best_t;
      ycen = best_y;
    }
    th *= search.shrink;
    yh *= search.shrink;
  }

  out.value = amp * best_v;
  out.argmax_y = best_y;
  out.argmax_t = best_t;
  return out;
}

}  // namespace gmf
