#pragma once

#include "gmf/point.hpp"

namespace gmf {

// Natural log of a positive quantity; -inf encodes zero. The Mehler kernel
// carries an e^{|y|^2} factor that overflows doubles near |y| = 27, so all
// kernel arithmetic stays in this representation.
struct LogValue {
  double log_val = 0.0;
};

enum class MehlerForm { Explicit, Symmetric };

// log(1 - e^{-s}) for s > 0, series/branch split at s = log 2.
double log1mexp(double s);

// log M_t(x, y). The Symmetric form is the default evaluation path; the
// Explicit form exists for cross-validation.
LogValue mehler_log(double t, const Point& x, const Point& y, MehlerForm form = MehlerForm::Symmetric);

// log of the annulus bound for M_{t^2}(y, .) on the k-th shell around B_t(y):
// |y|^2 - (d/2) log(1 - e^{-2t^2}) + 2^{k+1} t |y| - 4^k / (2 e^{2t^2}).
// Stated for k >= 1 only.
LogValue annulus_bound_log(double t, const Point& y, int k, int dim);

struct ProofCoefficient {
  int k = 1;
  double aperture = 1.0;
  double cutoff = 1.0;
  double log_ck = 0.0;  // 2^{k+1} a (1 + aA) - 4^k / (2 e^{2a^2})
};

ProofCoefficient proof_coefficient(int k, double aperture, double cutoff);

}  // namespace gmf
