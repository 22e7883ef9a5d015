#pragma once

#include <functional>

#include "vmf/density.hpp"
#include "vmf/sphere.hpp"
#include "vmf/vec3.hpp"

namespace vmf {

// Momentum quadrature in spherical coordinates around a per-use axis:
// Gauss-Legendre radial on [0, radius], Gauss-Legendre polar cosine, uniform
// azimuth. The kernels are trigonometric polynomials of degree <= 2 in the
// azimuth, so n_azimuth >= 5 integrates them exactly.
struct MomentumSphericalRule {
  int n_radial = 32;
  int n_polar = 32;
  int n_azimuth = 8;
  double radius = 8.0;
};

// Backward-cone quadrature: the volume element dy/|y|^2 collapses to
// ds dS(omega) in retarded spherical coordinates, so nothing singular is ever
// evaluated. Radial s-nodes are Gauss-Legendre strictly inside (0, t).
struct ConeRule {
  int s_nodes = 48;
  int sphere_degree = 35;
  MomentumSphericalRule momentum;

  static ConeRule defaults(const PhaseDensity& f) {
    ConeRule r;
    r.momentum.radius = f.support_radius_p();
    return r;
  }
};

using FieldAtTime = std::function<Vec3(double, const Vec3&)>;  // (t, x) -> field
using FieldAtZero = std::function<Vec3(const Vec3&)>;          // initial datum

// Scalar majorant u(t,x): cone integral of (1+p^2)^{-1} (1+v.w)^{-3/2} f.
// Nonnegative; u(0, x) = 0.
double majorant_u(double t, const Vec3& x, const PhaseDensity& f, const ConeRule& rule,
                  int threads = 1);

// Tangential fields: cone integrals of the T kernels against f. Pointwise
// |field_E_T| <= sqrt(2) * majorant_u holds node-by-node for the same rule.
Vec3 field_E_T(double t, const Vec3& x, const PhaseDensity& f, const ConeRule& rule,
               int threads = 1);
Vec3 field_B_T(double t, const Vec3& x, const PhaseDensity& f, const ConeRule& rule,
               int threads = 1);

// S-term for prescribed fields: weight dy/|y| (one extra factor s), kernel
// K_{E,S} applied to the Lorentz force L = E + v ^ B times f.
Vec3 field_E_S(double t, const Vec3& x, const PhaseDensity& f, const FieldAtTime& E,
               const FieldAtTime& B, const ConeRule& rule, int threads = 1);

struct DataTerms {
  Vec3 E_D, E_DT, B_D, B_DT;
};

// Data terms of the field representation at (t, x), t > 0:
//   E_D  = d/dt [ (t/4pi) int E0(x+t w) dS ] + (t/4pi) int E1(x+t w) dS
//   E_DT = -(1/t) int_{|y|=t} int K_{E,DT} f0 dp dsigma(y)
// and the B analogues (with +1/t and K_{B,DT}). The time derivative is taken
// by a centered difference with step dt_factor * max(t, 1). The caller supplies
// E1 = curl B0 - j(0) and B1 = -curl E0.
DataTerms field_data_terms(double t, const Vec3& x, const FieldAtZero& E0, const FieldAtZero& B0,
                           const FieldAtZero& E1, const FieldAtZero& B1, const PhaseDensity* f0,
                           const ConeRule& rule, double dt_factor = 1e-4);

}  // namespace vmf
