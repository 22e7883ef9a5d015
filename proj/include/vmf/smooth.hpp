#pragma once

#include <cmath>

namespace vmf {

// g(t) = exp(-1/t) for t > 0, else 0. All derivatives vanish at t = 0.
inline double smooth_g(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// Smooth step: 0 for t <= 0, 1 for t >= 1, C^infinity transition in between.
inline double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  double a = smooth_g(t);
  return a / (a + smooth_g(1.0 - t));
}

// Plateau bump on (lo, hi): 1 on [lo + rise, hi - fall], 0 outside (lo, hi).
inline double smooth_bump(double t, double lo, double rise, double hi, double fall) {
  return smooth_step((t - lo) / rise) * smooth_step((hi - t) / fall);
}

}  // namespace vmf
