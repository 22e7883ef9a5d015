#pragma once

#include <cmath>
#include <stdexcept>

#include "vmf/vec3.hpp"

namespace vmf {

// Relativistic momentum, units with c = 1. |p| may be arbitrarily large.
struct Momentum {
  Vec3 p;
};

// Velocity of a massive particle; |v| < 1 strictly.
struct Velocity {
  Vec3 v;
};

// Unit vector (|omega| = 1 within 1e-14).
struct UnitVector {
  Vec3 omega;

  static UnitVector checked(const Vec3& w) {
    if (std::abs(norm(w) - 1.0) > 1e-14)
      throw std::invalid_argument("UnitVector: |omega| != 1");
    return UnitVector{w};
  }
  static UnitVector from(const Vec3& w) { return UnitVector{normalized(w)}; }
};

// v = p / sqrt(1 + |p|^2)
inline Velocity velocity_of(const Momentum& m) {
  double g = std::sqrt(1.0 + norm2(m.p));
  return Velocity{m.p / g};
}

// p = v / sqrt(1 - |v|^2); requires |v| < 1
inline Momentum momentum_of(const Velocity& u) {
  double v2 = norm2(u.v);
  if (v2 >= 1.0) throw std::domain_error("momentum_of: |v| >= 1");
  return Momentum{u.v / std::sqrt(1.0 - v2)};
}

// speed as a function of |p|
inline double speed_of_radius(double p_mag) { return p_mag / std::sqrt(1.0 + p_mag * p_mag); }

}  // namespace vmf
