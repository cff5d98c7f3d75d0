#pragma once

#include <cstdint>
#include <cmath>

#include "gmf/point.hpp"

namespace gmf {

// Counter-based deterministic sampling. A stream is addressed by
// (seed, stream, index); draws within it are consumed sequentially.
// Results do not depend on threading or on draws made in other streams,
// which is what makes verification reports reproducible under any worker
// count.
inline std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = a ^ (0x9E3779B97F4A7C15ull * (stream + 1));
    a = splitmix64(s);
    s = a ^ (0xC2B2AE3D27D4EB4Full * (index + 1));
    state_ = s;
  }

  std::uint64_t next_u64() { return splitmix64(state_); }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [0, n)
  int uniform_int(int n) {
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return static_cast<int>(x % un);
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Point uniform_dir(int dim) {
    if (dim == 1) return Point{uniform() < 0.5 ? -1.0 : 1.0};
    while (true) {
      Point p(dim);
      double n2 = 0.0;
      for (int i = 0; i < dim; ++i) {
        const double g = normal();
        p.set(i, g);
        n2 += g * g;
      }
      if (n2 > 1e-24) {
        const double inv = 1.0 / std::sqrt(n2);
        for (int i = 0; i < dim; ++i) p.set(i, p[i] * inv);
        return p;
      }
    }
  }

  // volume-uniform in the closed ball of given radius
  Point uniform_ball(int dim, double radius) {
    const Point dir = uniform_dir(dim);
    const double r = radius * std::pow(uniform(), 1.0 / dim);
    Point p(dim);
    for (int i = 0; i < dim; ++i) p.set(i, r * dir[i]);
    return p;
  }

 private:
  std::uint64_t state_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace gmf
