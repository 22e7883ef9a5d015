#pragma once

#include <vector>

#include "vmf/vec3.hpp"

namespace vmf {

// Quadrature rule on the unit sphere: positive weights summing to 4*pi,
// exact for spherical harmonics up to `degree`.
struct SphereRule {
  struct Node {
    Vec3 omega;
    double weight;
  };
  std::vector<Node> nodes;
  int degree = 0;

  double weight_sum() const {
    double s = 0.0;
    for (const auto& n : nodes) s += n.weight;
    return s;
  }
};

// Product rule: Gauss-Legendre in cos(polar) x uniform in azimuth.
// (degree/2 + 1) * (degree + 1) nodes; exact through the requested degree.
SphereRule sphere_rule(int degree);

}  // namespace vmf
