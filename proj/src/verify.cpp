#include "gmf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gmf/parallel.hpp"
#include "gmf/quadrature.hpp"
#include "gmf/rng.hpp"
#include "gmf/semigroup.hpp"
#include "gmf/special.hpp"

namespace gmf {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kInf = std::numeric_limits<double>::infinity();

double sphere_area(int dim) {
  switch (dim) {
    case 1: return 2.0;
    case 2: return 2.0 * kPi;
    default: return 4.0 * kPi;
  }
}

struct MarginAccumulator {
  long violations = 0;
  double worst = kInf;
  void add(double margin) {
    if (margin < worst) worst = margin;
    if (margin < -1e-12) ++violations;
  }
  void merge(const MarginAccumulator& o) {
    violations += o.violations;
    worst = std::min(worst, o.worst);
  }
};

// margin of one hypothesis draw; the stream supplies all randomness
double lemma_margin(LemmaId id, const LemmaParams& p, SampleStream& rng) {
  const int d = p.dim;
  switch (id) {
    case LemmaId::L1a: {
      const Point x = rng.uniform_ball(d, 5.0);
      const double mx = admissibility(x, ConeVariant::Full);
      const double t = p.cutoff * mx * (1.0 - rng.uniform());  // (0, a m(x)]
      const Point dir = rng.uniform_dir(d);
      const double r = p.aperture * t * rng.uniform();  // [0, A t)
      Point y(d);
      for (int i = 0; i < d; ++i) y.set(i, x[i] + r * dir[i]);
      const double my = admissibility(y, ConeVariant::Full);
      return p.cutoff * (1.0 + p.cutoff * p.aperture) * my - t;
    }
    case LemmaId::L1b: {
      const Point x = rng.uniform_ball(d, 5.0);
      const double mx = admissibility(x, ConeVariant::Full);
      const Point dir = rng.uniform_dir(d);
      const double r = p.aperture * mx * rng.uniform();  // [0, A m(x))
      Point y(d);
      for (int i = 0; i < d; ++i) y.set(i, x[i] + r * dir[i]);
      const double my = admissibility(y, ConeVariant::Full);
      const double m1 = (1.0 + p.aperture) * my - mx;
      const double m2 = 2.0 * (1.0 + p.aperture) * mx - my;
      return std::min(m1, m2);
    }
    case LemmaId::L2: {
      const Point x = rng.uniform_ball(d, 5.0);
      const double mx = admissibility(x, ConeVariant::Full);
      const Point dir = rng.uniform_dir(d);
      const double r = p.alpha * mx * rng.uniform();  // [0, alpha m(x)]
      Point y(d);
      for (int i = 0; i < d; ++i) y.set(i, x[i] + r * dir[i]);
      const double a2 = p.alpha * p.alpha;
      const double lower = y.norm2() - a2 - 2.0 * p.alpha;           // log of lower bound
      const double upper = y.norm2() + a2 * (1.0 + p.alpha) * (1.0 + p.alpha) +
                           2.0 * p.alpha * (1.0 + p.alpha);          // log of upper bound
      const double mid = x.norm2();
      return std::min(mid - lower, upper - mid);
    }
    case LemmaId::L3:
    case LemmaId::L3shift: {
      const Point x = rng.uniform_ball(d, 5.0);
      const double t = 2.0 * (1.0 - rng.uniform());  // (0, 2]
      const double lhs = std::log(gamma_ball(BallSpec(x, t)).gamma_mass);
      if (id == LemmaId::L3) {
        const double rhs = std::log(sphere_area(d)) - 0.5 * d * std::log(kPi) + d * std::log(t) -
                           std::log(static_cast<double>(d)) + 2.0 * t * x.norm() - x.norm2();
        return rhs - lhs;
      }
      const double rhs = 2.0 * t * x.norm() - x.norm2() +
                         std::log(gamma_ball(BallSpec(Point::zero(d), t)).gamma_mass);
      return rhs - lhs;
    }
    case LemmaId::L4: {
      const Point y = rng.uniform_ball(d, 5.0);
      const double t = p.cutoff * (1.0 - rng.uniform());  // (0, a]
      const int k = 1 + rng.uniform_int(20);
      const double r_lo = std::ldexp(t, k), r_hi = std::ldexp(t, k + 1);
      // volume-uniform radius on [r_lo, r_hi)
      const double u = rng.uniform();
      const double rd = std::pow(r_lo, d) + u * (std::pow(r_hi, d) - std::pow(r_lo, d));
      const double r = std::min(std::pow(rd, 1.0 / d), std::nextafter(r_hi, 0.0));
      const Point dir = rng.uniform_dir(d);
      Point xi(d);
      for (int i = 0; i < d; ++i) xi.set(i, y[i] + r * dir[i]);
      return annulus_bound_log(t, y, k, d).log_val - mehler_log(t * t, y, xi).log_val;
    }
  }
  return kInf;
}

std::uint64_t lemma_stream_id(LemmaId id) { return 0x10 + static_cast<std::uint64_t>(id); }

double log_sum_exp(const std::vector<double>& logs) {
  double m = -kInf;
  for (double v : logs) m = std::max(m, v);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double v : logs) s += std::exp(v - m);
  return m + std::log(s);
}

}  // namespace

std::string lemma_name(LemmaId id) {
  switch (id) {
    case LemmaId::L1a: return "L1a";
    case LemmaId::L1b: return "L1b";
    case LemmaId::L2: return "L2";
    case LemmaId::L3: return "L3";
    case LemmaId::L3shift: return "L3shift";
    case LemmaId::L4: return "L4";
  }
  return "?";
}

LemmaId lemma_from_name(const std::string& name) {
  if (name == "L1a") return LemmaId::L1a;
  if (name == "L1b") return LemmaId::L1b;
  if (name == "L2") return LemmaId::L2;
  if (name == "L3") return LemmaId::L3;
  if (name == "L3shift") return LemmaId::L3shift;
  if (name == "L4") return LemmaId::L4;
  throw std::invalid_argument("unknown lemma id: " + name);
}

LemmaReport verify_lemma(LemmaId id, long samples, std::uint64_t seed, const LemmaParams& params) {
  if (samples < 1000) throw std::invalid_argument("verify_lemma: samples must be >= 1000");
  if (params.dim < 1 || params.dim > 3) throw std::invalid_argument("verify_lemma: dim must be in 1..3");
  if (!(params.aperture > 0.0) || !(params.cutoff > 0.0) || !(params.alpha > 0.0))
    throw std::invalid_argument("verify_lemma: parameters must be positive");

  const std::size_t n = static_cast<std::size_t>(samples);
  const std::size_t chunk = 4096;
  const std::size_t nchunks = (n + chunk - 1) / chunk;
  std::vector<MarginAccumulator> partial(nchunks);
  parallel_for(nchunks, params.workers, [&](std::size_t ci) {
    MarginAccumulator acc;
    const std::size_t lo = ci * chunk, hi = std::min(n, lo + chunk);
    for (std::size_t i = lo; i < hi; ++i) {
      SampleStream rng(seed, lemma_stream_id(id), i);
      acc.add(lemma_margin(id, params, rng));
    }
    partial[ci] = acc;
  });

  MarginAccumulator total;
  for (const auto& acc : partial) total.merge(acc);

  LemmaReport rep;
  rep.lemma_id = id;
  rep.samples = samples;
  rep.violations = total.violations;
  rep.worst_margin = total.worst;
  rep.seed = seed;
  return rep;
}

std::vector<double> annulus_decomposition(const TestFunction& u, const Point& y, double t, int kmax,
                                          double tol) {
  require_same_dim(u.support_center(), y);
  if (!(t > 0.0)) throw std::invalid_argument("annulus_decomposition: t must be positive");
  if (kmax < 0) throw std::invalid_argument("annulus_decomposition: kmax must be nonnegative");
  if (!std::isfinite(u.support_radius()))
    throw std::invalid_argument("annulus_decomposition: test function must be compactly supported");
  if (!(std::ldexp(t, kmax) > y.norm() + u.support_radius()))
    throw std::invalid_argument("annulus_decomposition: kmax too small to cover the support");

  const double amp = std::fabs(u.amplitude());
  const TestFunction shape = u.with_amplitude(1.0);
  const double s = t * t;
  auto g = [&](const Point& xi) {
    const double uv = std::fabs(shape.unit_eval(xi));
    if (uv == 0.0) return 0.0;
    return uv * std::exp(mehler_log(s, y, xi).log_val) * gamma_density(xi);
  };

  const double cell_tol = std::max(1e-12, tol / (kmax + 1));
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(kmax) + 1);
  for (int k = 0; k <= kmax; ++k) {
    RegionSpec rs;
    rs.outer = BallSpec(y, std::ldexp(t, k + 1));
    rs.inner_radius = k == 0 ? 0.0 : std::ldexp(t, k);
    if (auto js = shape.jump_sphere()) rs.jumps.push_back(*js);
    terms.push_back(amp * integrate_region(g, rs, cell_tol).value);
  }
  return terms;
}

ProofConstants proof_constant(double aperture, double cutoff, int dim) {
  if (!(aperture > 0.0) || !(cutoff > 0.0))
    throw std::invalid_argument("proof_constant: aperture and cutoff must be positive");
  if (dim < 1 || dim > 3) throw std::invalid_argument("proof_constant: dim must be in 1..3");

  const double A = aperture, a = cutoff;
  ProofConstants pc;
  pc.aperture = A;
  pc.cutoff = a;
  pc.dim = dim;
  pc.alpha = a * A;
  pc.log_lemma2_factor = pc.alpha * pc.alpha + 2.0 * pc.alpha;
  pc.K = dyadic_cover_index(A);

  for (int k = 1; k < pc.K; ++k) pc.head_terms.push_back(proof_coefficient(k, A, a));

  // tail: sum_{k >= K} 2^{kd} e^{2^{k+1}(1 + 2a + aA)} e^{-4^k / (2 e^{2a^2})},
  // summed in log space until the next term falls 1e-16 below the partial sum
  const double growth = 1.0 + 2.0 * a + a * A;
  const double decay_scale = 2.0 * std::exp(2.0 * a * a);
  auto log_term = [&](int k) {
    return k * dim * 0.6931471805599453094172321 + std::ldexp(growth, k + 1) -
           std::ldexp(1.0, 2 * k) / decay_scale;
  };
  double log_sum = -kInf;
  double prev = kInf;
  for (int k = pc.K; k < 400; ++k) {
    const double lt = log_term(k);
    if (log_sum == -kInf)
      log_sum = lt;
    else if (lt > log_sum)
      log_sum = lt + std::log1p(std::exp(log_sum - lt));
    else
      log_sum += std::log1p(std::exp(lt - log_sum));
    if (lt < prev && lt < log_sum + std::log(1e-16)) break;
    prev = lt;
  }
  pc.log_tail_sum = log_sum;

  // Ball-measure envelope and near-field kernel factor, dominated over the
  // three regimes (inner shell, k < K, k >= K with the 2^{kd} part tracked in
  // the tail terms):
  //   (S_d / (d pi^{d/2})) * a^d / (1 - e^{-2a^2})^{d/2}
  //   * max(4, 2A)^d * e^{2 a max(4, 2A)} * e^{2a(1 + aA)}
  const double rho = std::max(4.0, 2.0 * A);
  pc.log_geometry_factor = std::log(sphere_area(dim)) - std::log(static_cast<double>(dim)) -
                           0.5 * dim * std::log(kPi) + dim * std::log(a) -
                           0.5 * dim * log1mexp(2.0 * a * a) + dim * std::log(rho) +
                           2.0 * a * rho + 2.0 * a * (1.0 + a * A);

  std::vector<double> series{0.0};  // the k = 0 shell contributes the bare 1
  for (const auto& h : pc.head_terms) series.push_back(h.log_ck);
  series.push_back(pc.log_tail_sum);
  pc.log_C_total = pc.log_lemma2_factor + pc.log_geometry_factor + log_sum_exp(series);

  pc.lemma2_factor = std::exp(pc.log_lemma2_factor);
  pc.tail_sum = std::exp(pc.log_tail_sum);
  pc.geometry_factor = std::exp(pc.log_geometry_factor);
  pc.C_total = std::exp(pc.log_C_total);
  return pc;
}

std::vector<TestFunction> default_corpus(int dim) {
  auto embed = [dim](double first) {
    Point p(dim);
    p.set(0, first);
    return p;
  };
  return {
      TestFunction::ball_indicator(embed(0.0), 1.0),
      TestFunction::ball_indicator(embed(2.0), 0.5),
      TestFunction::gaussian_bump(embed(0.0), 0.5),
      TestFunction::gaussian_bump(embed(1.5), 0.3),
      TestFunction::gaussian_bump(embed(-1.0), 1.0),
  };
}

ScanResult ratio_scan(const std::vector<TestFunction>& corpus, const std::vector<Point>& xs,
                      const ConeSpec& cone, const SearchParams& search, int order, int workers) {
  if (corpus.empty() || xs.empty()) throw std::invalid_argument("ratio_scan: corpus and xs must be nonempty");
  const int dim = xs.front().dim();
  for (const auto& u : corpus) {
    if (u.dim() != dim) throw std::invalid_argument("ratio_scan: dimension mismatch in corpus");
    if (!std::isfinite(u.support_radius()))
      throw std::invalid_argument("ratio_scan: corpus members must be compactly supported");
  }
  for (const auto& x : xs)
    if (x.dim() != dim) throw std::invalid_argument("ratio_scan: dimension mismatch in xs");

  ScanResult out;
  out.cone = cone;
  const bool reduced = cone.variant == ConeVariant::Reduced;
  out.constants = proof_constant(reduced ? 1.0 : cone.aperture, reduced ? 1.0 : cone.cutoff, dim);

  const std::size_t nu = corpus.size(), nx = xs.size();
  std::vector<RatioPoint> flat(nu * nx);
  parallel_for(nu * nx, workers, [&](std::size_t idx) {
    const std::size_t ui = idx / nx, xi = idx % nx;
    RatioPoint rp;
    rp.x = xs[xi];
    rp.nt_value = nt_maximal(corpus[ui], xs[xi], cone, search, order).value;
    rp.hl_value = hl_maximal(corpus[ui], xs[xi], search).value;
    rp.ratio = rp.nt_value / rp.hl_value;
    flat[idx] = rp;
  });

  out.max_ratio = 0.0;
  bool all_ok = true;
  out.reports.reserve(nu);
  for (std::size_t ui = 0; ui < nu; ++ui) {
    RatioReport rep;
    rep.function_id = corpus[ui].describe();
    rep.cone = cone;
    rep.points.assign(flat.begin() + static_cast<long>(ui * nx),
                      flat.begin() + static_cast<long>((ui + 1) * nx));
    rep.proof_constant = out.constants.C_total;
    double fmax = 0.0;
    bool ok = true;
    for (const auto& rp : rep.points) {
      if (!(rp.hl_value > 0.0) || !std::isfinite(rp.ratio)) ok = false;
      fmax = std::max(fmax, rp.ratio);
    }
    rep.max_ratio = fmax;
    rep.passed = ok && std::log(fmax) <= out.constants.log_C_total;
    all_ok = all_ok && rep.passed;
    out.max_ratio = std::max(out.max_ratio, fmax);
    out.reports.push_back(std::move(rep));
  }
  out.passed = all_ok;
  return out;
}

}  // namespace gmf
