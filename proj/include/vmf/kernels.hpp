#pragma once

#include <cstdint>
#include <variant>

#include "vmf/kinematics.hpp"
#include "vmf/report.hpp"
#include "vmf/vec3.hpp"

namespace vmf {

// Kernels of the Glassey-Strauss field representation. The T and DT kinds are
// vector valued; the S kind is a 3x3 matrix acting on the Lorentz force.
enum class KernelKind : std::uint8_t { E_T, E_S, E_DT, B_T, B_DT };

struct KernelValue {
  KernelKind kind;
  std::variant<Vec3, Mat3> value;

  const Vec3& vec() const { return std::get<Vec3>(value); }
  const Mat3& mat() const { return std::get<Mat3>(value); }
};

// Exact pointwise evaluation at (omega, p):
//   K_{E,DT} = (1+v.w)^{-1} (w - (v.w) v)
//   K_{E,T}  = (1+p^2)^{-1} (1+v.w)^{-2} (v + w)
//   K_{E,S}  = (1+p^2)^{-1/2}(1+v.w)^{-2} [(1+v.w) I + ((v.w)w - v) (x) v - (v+w) (x) w]
//   K_{B,DT} = -(1+v.w)^{-1} (v ^ w)
//   K_{B,T}  = -(1+p^2)^{-1} (1+v.w)^{-2} (v ^ w)
// Finite whenever 1 + v.w > 0, which holds automatically since |v| < 1.
KernelValue kernel(KernelKind kind, const UnitVector& omega, const Momentum& p);

// Deterministic sampling sweep over (omega, p) measuring the sharp kernel bounds:
//   sup |K_{E,T}| (1+p^2) (1+v.w)^{3/2}            <= sqrt(2)
//   sup_{|z|=1} |K_{E,S} z| (1+p^2)^{1/2} (1+v.w)  <= 4
// omega is uniform on the sphere, |p| log-uniform in [1e-3, 1e3]; every fourth
// sample aims omega within 1e-6 of -v/|v| to stress the near-null regime.
// The constants come from chaining |v+w| <= sqrt(2)(1+v.w)^{1/2} and
// |w-(v.w)v| <= sqrt(2)(1+v.w)^{1/2}:
//   |Mz| <= (1+v.w)(1+|v|)|z| + 2(1+v.w)|z| <= 4 (1+v.w)|z|.
// The measured E_S supremum is ~1.0, well inside the chained constant.
// The B_T ratio (same normalization as E_T) is reported alongside; with a = |v|
// and c = v.w/a, |v^w|^2 = a(1+c) * a(1-c) <= (1+ac) * 2 gives the same sqrt(2).
EstimateReport verify_kernel_bounds(std::int64_t sample_count, std::uint64_t rng_seed,
                                    int threads = 1);

}  // namespace vmf
