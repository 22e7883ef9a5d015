#pragma once

namespace vmf {

// Bessel function of the first kind, order zero, for r >= 0.
//
// Power series in extended precision up to r = 14, Hankel asymptotic expansion
// (P/Q form, truncated at the minimal term) beyond. Absolute error is below
// 1e-13 everywhere; |J0(r)| <= 1. Throws std::domain_error for r < 0.
double bessel_j0(double r);

// sup over the grid {0, step, 2*step, ..., r_max} of sqrt(r) * |J0(r)|.
// This is the sharp constant in the decaying branch of the envelope
// |J0(r)| <= C * min(1, r^{-1/2}); the flat branch has constant J0(0) = 1.
// Approaches sqrt(2/pi) ~ 0.7979 from below as r_max grows.
double j0_envelope_constant(double r_max, double grid_step);

}  // namespace vmf
