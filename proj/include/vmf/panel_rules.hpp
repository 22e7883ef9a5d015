#pragma once

#include <vector>

namespace vmf {

// Quadrature node annotated with the partition-of-unity windows alive at it.
// At any point at most three consecutive windows are nonzero.
struct WindowedNode {
  double x = 0.0;    // principal coordinate
  double w = 0.0;    // weight in the principal coordinate
  double tau = 0.0;  // window argument (x itself, or sqrt(1-x^2) for edge rules)
  int win_first = 0;
  double win[3] = {0.0, 0.0, 0.0};  // psi_{win_first + i}(tau)
};

struct WindowedRule {
  std::vector<WindowedNode> nodes;
};

// Rule on (0, 1] for the retarded-time fraction: Gauss panels on the dyadic
// intervals [2^{-l-1}, 2^{-l}], l = 0..depth-1, plus a closing panel
// [0, 2^{-depth}]. `phase` is the largest phase rate of the integrand in the
// principal coordinate; panel node counts grow accordingly.
WindowedRule make_dyadic_time_rule(int base_nodes, int depth, double phase,
                                   double nodes_per_radian, int node_cap);

// Rule on [-1, 1] whose windows live on tau = sqrt(1 - x^2): a central Gauss
// panel |x| <= sqrt(3)/2 (tau >= 1/2), tau-parametrized edge panels
// tau in [2^{-q-1}, 2^{-q}] for q = 1..q_max on both signs of x, and geometric
// closing panels toward x = +-1. The tau parametrization keeps integrands with
// a near-singularity at x -> -1 (e.g. (1 + a x)^{-3/2}, a -> 1) well resolved.
WindowedRule make_edge_resolved_rule(int center_base, int edge_base, int q_max, double phase,
                                     double nodes_per_radian, int node_cap);

}  // namespace vmf
