#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "vmf/gauss.hpp"
#include "vmf/vec3.hpp"

namespace vmf {

// Structure certificate used by the spectral fast paths:
//   fhat(t, xi, p) = cis(-xi . center) * Fx(|xi|) * Wp(|p|) * T
// with T = 1 for time-frozen densities and T = cis(-t xi . v(p)) for
// free-streaming transport. Wherever this is exploited, a test checks the
// factorization against the generic fourier_x.
struct SeparableFourier {
  Vec3 center;
  std::function<double(double)> radial_x;    // Fx
  std::function<double(double)> radial_p;    // Wp
  bool free_streaming = false;
};

// A prescribed phase-space density f(t, x, p) >= 0. No PDE stepping happens
// anywhere; time enters only through the prescribed formula.
class PhaseDensity {
 public:
  virtual ~PhaseDensity() = default;

  virtual double evaluate(double t, const Vec3& x, const Vec3& p) const = 0;

  virtual bool has_fourier() const { return false; }
  // spatial Fourier transform, convention fhat(xi) = int e^{-i xi.x} f dx
  virtual std::complex<double> fourier_x(double t, const Vec3& xi, const Vec3& p) const;

  virtual double sup_bound() const = 0;
  // effective support radii: the density is below 1e-300 outside
  virtual double support_radius_x(double t) const = 0;
  virtual double support_radius_p() const = 0;
  virtual Vec3 center_x() const { return {}; }

  // structure flags (conservative: false when unsure)
  virtual std::optional<SeparableFourier> separable_fourier() const { return std::nullopt; }
  // f(t,x,p) depends on p through |p| only, at every fixed (t,x)
  virtual bool momentum_radial() const { return false; }
  // invariant under simultaneous rotation of (x - center, p)
  virtual bool isotropic() const { return false; }
};

using DensityPtr = std::shared_ptr<const PhaseDensity>;

struct GaussianParams {
  double amplitude = 1.0;
  double width_x = 1.0;   // a
  double width_p = 1.0;   // b
  Vec3 center{};
};

struct BumpParams {
  double amplitude = 1.0;
  double radius_x = 1.0;
  double radius_p = 1.0;
  Vec3 center{};
  double fourier_table_max = 1500.0;  // tabulated radial transform range
};

// f = A exp(-|x-x0|^2/(2a^2)) exp(-|p|^2/(2b^2)), time-frozen; analytic transform.
DensityPtr make_gaussian(const GaussianParams& params);

// Exactly compactly supported product bump in |x - x0| and |p|; the radial
// transform is tabulated by a padded sine transform at construction.
DensityPtr make_compact_bump(const BumpParams& params);

// f(t, x, p) = f0(x - v(p) t, p) for a time-frozen base density.
DensityPtr make_free_streaming(DensityPtr base);

// Nonnegative linear combination (for linearity checks). Coefficients must be >= 0.
DensityPtr make_linear_combination(std::vector<std::pair<double, DensityPtr>> terms);

struct Moments {
  double rho = 0.0;
  Vec3 j{};
};

// Cartesian Gauss-Legendre tensor grid on [-radius, radius]^3.
struct MomentumGrid {
  Quad1D axis;
  double radius = 0.0;
  static MomentumGrid make(int nodes_per_axis, double radius);
};

struct SpatialGrid {
  Quad1D axis;
  double radius = 0.0;
  Vec3 center{};
  static SpatialGrid make(int nodes_per_axis, double radius, const Vec3& center);
};

// rho = int f dp, j = int v f dp. The grid must cover support_radius_p.
Moments moments(const PhaseDensity& f, double t, const Vec3& x, const MomentumGrid& p_rule);

// int int sqrt(1+p^2) f dx dp. Grids must cover the supports at time t.
double kinetic_energy(const PhaseDensity& f, double t, const SpatialGrid& x_rule,
                      const MomentumGrid& p_rule, int threads = 1);

// int int f dx dp with the same grids.
double total_mass(const PhaseDensity& f, double t, const SpatialGrid& x_rule,
                  const MomentumGrid& p_rule, int threads = 1);

}  // namespace vmf
