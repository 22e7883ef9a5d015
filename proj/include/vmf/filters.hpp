#pragma once

#include <stdexcept>

#include "vmf/vec3.hpp"

namespace vmf {

// Dyadic frequency filters. The base profile is phi0(xi) = step(2 - |xi|):
// identically 1 for |xi| <= 1, identically 0 for |xi| >= 2, smooth between.
// Filter 0 is the profile itself; filter j >= 1 is the telescoping difference
//   phi_j(xi) = phi0(2^{-j} xi) - phi0(2^{-j+1} xi),
// supported in the shell 2^{j-1} <= |xi| <= 2^{j+1}. Partial sums telescope
// exactly: sum_{j<=J} phi_j(xi) = phi0(2^{-J} xi).
class DyadicFilterBank {
 public:
  explicit DyadicFilterBank(int j_max = 32) : j_max_(j_max) {}

  int j_max() const { return j_max_; }

  static double profile(double r);  // phi0 as a function of |xi|

  double operator()(int j, const Vec3& xi) const { return radial(j, norm(xi)); }
  double radial(int j, double r) const;

 private:
  int j_max_;
};

// Smooth partition of unity on (0, 1]:
//   supp psi_0    = [1/3, 1]
//   supp psi_k    = [2^{-(k+2)}, 2^{-k+1}],  k >= 1
// built by normalizing plateau bumps subordinate to the dyadic cover, so the
// family sums to exactly 1 at every point of (0, 1].
class UnitIntervalPartition {
 public:
  double operator()(int k, double sigma) const;

  // smallest k whose support can contain sigma; together with the two indices
  // above it this covers every window alive at sigma
  static int first_active(double sigma);

  // raw (unnormalized) bump and the normalizer, exposed for the quadrature layer
  static double bump(int k, double sigma);
  static double bump_sum(double sigma);
};

}  // namespace vmf
