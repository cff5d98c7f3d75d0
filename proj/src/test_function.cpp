#include "gmf/test_function.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gmf/semigroup.hpp"

namespace gmf {

namespace {

// radius at which exp(-r^2 / (2 w^2)) reaches 1e-16
const double kBumpCutSigmas = std::sqrt(-2.0 * std::log(1e-16));

double poly_eval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t j = c.size(); j-- > 0;) v = v * x + c[j];
  return v;
}

double poly_d1(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t j = c.size(); j-- > 1;) v = v * x + static_cast<double>(j) * c[j];
  return v;
}

double poly_d2(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t j = c.size(); j-- > 2;)
    v = v * x + static_cast<double>(j) * static_cast<double>(j - 1) * c[j];
  return v;
}

std::string join_coords(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  for (int i = 0; i < p.dim(); ++i) {
    if (i) os << ',';
    os << p[i];
  }
  return os.str();
}

}  // namespace

TestFunction TestFunction::constant(int dim, double c) {
  TestFunction f;
  f.kind_ = Kind::Constant;
  f.dim_ = dim;
  f.amplitude_ = c;
  f.center_ = Point::zero(dim);
  return f;
}

TestFunction TestFunction::polynomial(std::vector<std::vector<double>> axis_coeffs) {
  if (axis_coeffs.empty() || axis_coeffs.size() > 3)
    throw std::invalid_argument("TestFunction::polynomial: need 1..3 axis coefficient lists");
  TestFunction f;
  f.kind_ = Kind::Polynomial;
  f.dim_ = static_cast<int>(axis_coeffs.size());
  f.center_ = Point::zero(f.dim_);
  f.coeffs_ = std::move(axis_coeffs);
  for (const auto& c : f.coeffs_)
    if (c.empty()) throw std::invalid_argument("TestFunction::polynomial: empty coefficient list");
  return f;
}

TestFunction TestFunction::hermite(std::vector<int> degrees) {
  if (degrees.empty() || degrees.size() > 3)
    throw std::invalid_argument("TestFunction::hermite: need 1..3 degrees");
  for (int n : degrees)
    if (n < 0 || n > 12) throw std::invalid_argument("TestFunction::hermite: degree must be in 0..12");
  TestFunction f;
  f.kind_ = Kind::HermitePoly;
  f.dim_ = static_cast<int>(degrees.size());
  f.center_ = Point::zero(f.dim_);
  f.degrees_ = std::move(degrees);
  return f;
}

TestFunction TestFunction::gaussian_bump(Point center, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("TestFunction::gaussian_bump: width must be positive");
  TestFunction f;
  f.kind_ = Kind::GaussianBump;
  f.dim_ = center.dim();
  f.center_ = center;
  f.width_ = width;
  return f;
}

TestFunction TestFunction::ball_indicator(Point center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("TestFunction::ball_indicator: radius must be positive");
  TestFunction f;
  f.kind_ = Kind::BallIndicator;
  f.dim_ = center.dim();
  f.center_ = center;
  f.radius_ = radius;
  return f;
}

TestFunction TestFunction::with_amplitude(double amp) const {
  if (!std::isfinite(amp)) throw std::invalid_argument("TestFunction: amplitude must be finite");
  TestFunction f = *this;
  f.amplitude_ = amp;
  return f;
}

double TestFunction::support_extent() const {
  switch (kind_) {
    case Kind::GaussianBump: return width_ * kBumpCutSigmas;
    case Kind::BallIndicator: return radius_;
    default: return std::numeric_limits<double>::infinity();
  }
}

double TestFunction::support_radius() const {
  const double e = support_extent();
  return std::isfinite(e) ? center_.norm() + e : e;
}

std::optional<BallSpec> TestFunction::jump_sphere() const {
  if (kind_ == Kind::BallIndicator) return BallSpec(center_, radius_);
  return std::nullopt;
}

bool TestFunction::continuous_at(const Point& x) const {
  if (smooth()) return true;
  return std::fabs(dist(x, center_) - radius_) > 1e-12 * std::max(1.0, radius_);
}

double TestFunction::unit_eval(const Point& x) const {
  require_same_dim(x, center_);
  switch (kind_) {
    case Kind::Constant: return 1.0;
    case Kind::Polynomial: {
      double v = 1.0;
      for (int i = 0; i < dim_; ++i) v *= poly_eval(coeffs_[static_cast<std::size_t>(i)], x[i]);
      return v;
    }
    case Kind::HermitePoly: {
      double v = 1.0;
      for (int i = 0; i < dim_; ++i) v *= hermite_poly(degrees_[static_cast<std::size_t>(i)], x[i]);
      return v;
    }
    case Kind::GaussianBump: return std::exp(-dist2(x, center_) / (2.0 * width_ * width_));
    case Kind::BallIndicator: return dist2(x, center_) < radius_ * radius_ ? 1.0 : 0.0;
  }
  return 0.0;
}

double TestFunction::unit_sup_norm() const {
  switch (kind_) {
    case Kind::Constant:
    case Kind::GaussianBump:
    case Kind::BallIndicator: return 1.0;
    default: return std::numeric_limits<double>::infinity();
  }
}

Point TestFunction::unit_gradient(const Point& x) const {
  if (!smooth()) throw std::domain_error("TestFunction: no closed-form gradient for this kind");
  Point g(dim_);
  switch (kind_) {
    case Kind::Constant: return g;
    case Kind::Polynomial: {
      for (int i = 0; i < dim_; ++i) {
        double v = poly_d1(coeffs_[static_cast<std::size_t>(i)], x[i]);
        for (int j = 0; j < dim_; ++j)
          if (j != i) v *= poly_eval(coeffs_[static_cast<std::size_t>(j)], x[j]);
        g.set(i, v);
      }
      return g;
    }
    case Kind::HermitePoly: {
      for (int i = 0; i < dim_; ++i) {
        const int n = degrees_[static_cast<std::size_t>(i)];
        double v = n == 0 ? 0.0 : 2.0 * n * hermite_poly(n - 1, x[i]);
        for (int j = 0; j < dim_; ++j)
          if (j != i) v *= hermite_poly(degrees_[static_cast<std::size_t>(j)], x[j]);
        g.set(i, v);
      }
      return g;
    }
    case Kind::GaussianBump: {
      const double u = unit_eval(x);
      const double w2 = width_ * width_;
      for (int i = 0; i < dim_; ++i) g.set(i, -(x[i] - center_[i]) / w2 * u);
      return g;
    }
    default: break;
  }
  return g;
}

double TestFunction::unit_laplacian(const Point& x) const {
  if (!smooth()) throw std::domain_error("TestFunction: no closed-form laplacian for this kind");
  switch (kind_) {
    case Kind::Constant: return 0.0;
    case Kind::Polynomial: {
      double lap = 0.0;
      for (int i = 0; i < dim_; ++i) {
        double v = poly_d2(coeffs_[static_cast<std::size_t>(i)], x[i]);
        for (int j = 0; j < dim_; ++j)
          if (j != i) v *= poly_eval(coeffs_[static_cast<std::size_t>(j)], x[j]);
        lap += v;
      }
      return lap;
    }
    case Kind::HermitePoly: {
      double lap = 0.0;
      for (int i = 0; i < dim_; ++i) {
        const int n = degrees_[static_cast<std::size_t>(i)];
        double v = n < 2 ? 0.0 : 4.0 * n * (n - 1) * hermite_poly(n - 2, x[i]);
        for (int j = 0; j < dim_; ++j)
          if (j != i) v *= hermite_poly(degrees_[static_cast<std::size_t>(j)], x[j]);
        lap += v;
      }
      return lap;
    }
    case Kind::GaussianBump: {
      const double u = unit_eval(x);
      const double w2 = width_ * width_;
      return (dist2(x, center_) / (w2 * w2) - dim_ / w2) * u;
    }
    default: break;
  }
  return 0.0;
}

std::string TestFunction::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::Constant: os << "const:" << amplitude_; break;
    case Kind::Polynomial: {
      os << "poly:";
      for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) os << ';';
        for (std::size_t j = 0; j < coeffs_[i].size(); ++j) {
          if (j) os << ',';
          os << coeffs_[i][j];
        }
      }
      break;
    }
    case Kind::HermitePoly: {
      os << "hermite:";
      for (std::size_t i = 0; i < degrees_.size(); ++i) {
        if (i) os << ',';
        os << degrees_[i];
      }
      break;
    }
    case Kind::GaussianBump: os << "bump:" << join_coords(center_) << ',' << width_; break;
    case Kind::BallIndicator: os << "ball:" << join_coords(center_) << ',' << radius_; break;
  }
  if (kind_ != Kind::Constant && amplitude_ != 1.0) os << "*" << amplitude_;
  return os.str();
}

}  // namespace gmf
