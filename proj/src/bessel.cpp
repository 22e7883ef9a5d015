#include "vmf/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace vmf {

namespace {

constexpr double kSplit = 14.0;

// Ascending series J0(r) = sum_m (-r^2/4)^m / (m!)^2, compensated summation in
// long double. Worst-case cancellation at the split point stays below 1e-15.
double j0_series(double r) {
  const long double x2 = static_cast<long double>(r) * static_cast<long double>(r);
  long double term = 1.0L, sum = 1.0L, comp = 0.0L;
  for (int m = 1; m <= 80; ++m) {
    term *= -x2 / (4.0L * m * m);
    long double y = term - comp;
    long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (std::abs(term) < 1e-22L * (1.0L + std::abs(sum))) break;
  }
  return static_cast<double>(sum);
}

// Hankel expansion J0(r) = sqrt(2/(pi r)) [P cos(r - pi/4) - Q sin(r - pi/4)]
// with (0,m) = prod_{i<=m} (-(2i-1)^2) / (m! 4^m); truncated where the terms
// stop decreasing. For r >= 14 the minimal term is below 1e-13.
double j0_hankel(double r) {
  const long double tw = 2.0L * static_cast<long double>(r);
  long double a = 1.0L;     // (0,m) running coefficient
  long double pw = 1.0L;    // (2r)^m
  long double P = 1.0L, Q = 0.0L;
  long double prev = 1.0L;
  int sp = 0, sq = 0;  // alternating sign counters for even/odd m
  for (int m = 1; m <= 60; ++m) {
    a *= -static_cast<long double>((2 * m - 1) * (2 * m - 1)) / (4.0L * m);
    pw *= tw;
    long double tm = a / pw;
    if (std::abs(tm) >= std::abs(prev)) break;  // divergence onset
    prev = tm;
    if (m % 2 == 1) {
      Q += (sq++ % 2 == 0 ? tm : -tm);
    } else {
      P += (sp++ % 2 == 0 ? -tm : tm);
    }
    if (std::abs(tm) < 1e-20L) break;
  }
  const long double pi = 3.14159265358979323846264338L;
  long double ph = static_cast<long double>(r) - pi / 4.0L;
  long double val = std::sqrt(2.0L / (pi * static_cast<long double>(r))) *
                    (P * std::cos(ph) - Q * std::sin(ph));
  return static_cast<double>(val);
}

}  // namespace

double bessel_j0(double r) {
  if (r < 0.0) throw std::domain_error("bessel_j0: negative argument");
  if (r == 0.0) return 1.0;
  double v = r <= kSplit ? j0_series(r) : j0_hankel(r);
  // the defining integral gives |J0| <= 1; clip the last-ulp excursions near r = 0
  if (v > 1.0) v = 1.0;
  if (v < -1.0) v = -1.0;
  return v;
}

double j0_envelope_constant(double r_max, double grid_step) {
  if (r_max < 10.0) throw std::invalid_argument("j0_envelope_constant: r_max < 10");
  if (grid_step <= 0.0) throw std::invalid_argument("j0_envelope_constant: nonpositive step");
  double sup = 0.0;
  const long long n = static_cast<long long>(r_max / grid_step);
  for (long long i = 0; i <= n; ++i) {
    double r = i * grid_step;
    double v = std::sqrt(r) * std::abs(bessel_j0(r));
    if (v > sup) sup = v;
  }
  return sup;
}

}  // namespace vmf
