#pragma once

#include <array>
#include <cmath>
#include <initializer_list>
#include <stdexcept>

namespace gmf {

// Point of R^d, d in {1,2,3}. Coordinates are kept finite.
class Point {
 public:
  Point() = default;
  explicit Point(int dim) : dim_(check_dim(dim)) {}
  Point(std::initializer_list<double> coords) {
    dim_ = check_dim(static_cast<int>(coords.size()));
    int i = 0;
    for (double v : coords) set(i++, v);
  }

  static Point zero(int dim) { return Point(dim); }

  int dim() const { return dim_; }

  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }

  void set(int i, double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("Point: non-finite coordinate");
    c_[static_cast<std::size_t>(i)] = v;
  }

  double norm2() const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += c_[static_cast<std::size_t>(i)] * c_[static_cast<std::size_t>(i)];
    return s;
  }
  double norm() const { return std::sqrt(norm2()); }

 private:
  static int check_dim(int d) {
    if (d < 1 || d > 3) throw std::invalid_argument("Point: dim must be in 1..3");
    return d;
  }
  std::array<double, 3> c_{{0.0, 0.0, 0.0}};
  int dim_ = 1;
};

inline void require_same_dim(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
}

inline double dot(const Point& a, const Point& b) {
  require_same_dim(a, b);
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline double dist2(const Point& a, const Point& b) {
  require_same_dim(a, b);
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double dist(const Point& a, const Point& b) { return std::sqrt(dist2(a, b)); }

// Open Euclidean ball.
struct BallSpec {
  Point center;
  double radius = 1.0;

  BallSpec() = default;
  BallSpec(Point c, double r) : center(c), radius(r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("BallSpec: radius must be positive");
  }
};

}  // namespace gmf
