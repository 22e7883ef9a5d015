#include "vmf/panel_rules.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vmf/filters.hpp"
#include "vmf/gauss.hpp"

namespace vmf {

namespace {

int panel_nodes(int base, double phase_span, double nodes_per_radian, int cap) {
  double extra = nodes_per_radian * phase_span;
  int n = base + (extra > 0 ? static_cast<int>(std::ceil(extra)) : 0);
  return std::clamp(n, 2, cap);
}

void set_windows(WindowedNode& node) {
  if (node.tau <= 0.0 || node.tau > 1.0) {
    node.win_first = 0;
    node.win[0] = node.win[1] = node.win[2] = 0.0;
    return;
  }
  UnitIntervalPartition part;
  node.win_first = UnitIntervalPartition::first_active(node.tau);
  for (int i = 0; i < 3; ++i) node.win[i] = part(node.win_first + i, node.tau);
}

void append_panel(WindowedRule& rule, double lo, double hi, int n, bool tau_is_x) {
  Quad1D q = gauss_legendre(n, lo, hi);
  for (std::size_t i = 0; i < q.size(); ++i) {
    WindowedNode node;
    node.x = q.x[i];
    node.w = q.w[i];
    node.tau = tau_is_x ? q.x[i] : std::sqrt(std::max(0.0, 1.0 - q.x[i] * q.x[i]));
    set_windows(node);
    rule.nodes.push_back(node);
  }
}

// edge panel parametrized by tau on [tau_lo, tau_hi], emitted at sign * sqrt(1-tau^2)
void append_tau_panel(WindowedRule& rule, double tau_lo, double tau_hi, int n, int sign) {
  Quad1D q = gauss_legendre(n, tau_lo, tau_hi);
  for (std::size_t i = 0; i < q.size(); ++i) {
    double tau = q.x[i];
    double x = std::sqrt(std::max(0.0, 1.0 - tau * tau));
    WindowedNode node;
    node.x = sign * x;
    node.w = q.w[i] * tau / x;  // |dx/dtau|
    node.tau = tau;
    set_windows(node);
    rule.nodes.push_back(node);
  }
}

}  // namespace

WindowedRule make_dyadic_time_rule(int base_nodes, int depth, double phase,
                                   double nodes_per_radian, int node_cap) {
  if (depth < 1) throw std::invalid_argument("make_dyadic_time_rule: depth < 1");
  WindowedRule rule;
  for (int l = 0; l < depth; ++l) {
    double hi = std::ldexp(1.0, -l);
    double lo = 0.5 * hi;
    int n = panel_nodes(base_nodes, phase * (hi - lo), nodes_per_radian, node_cap);
    append_panel(rule, lo, hi, n, true);
  }
  double closing = std::ldexp(1.0, -depth);
  append_panel(rule, 0.0, closing, panel_nodes(base_nodes, phase * closing, nodes_per_radian,
                                               node_cap), true);
  return rule;
}

WindowedRule make_edge_resolved_rule(int center_base, int edge_base, int q_max, double phase,
                                     double nodes_per_radian, int node_cap) {
  if (q_max < 1) throw std::invalid_argument("make_edge_resolved_rule: q_max < 1");
  WindowedRule rule;
  const double b = std::sqrt(3.0) / 2.0;  // |x| at tau = 1/2
  int nc = panel_nodes(center_base, phase * 2.0 * b, nodes_per_radian, node_cap);
  append_panel(rule, -b, b, nc, false);
  for (int sign : {-1, +1}) {
    for (int q = 1; q <= q_max; ++q) {
      double tau_hi = std::ldexp(1.0, -q);
      double tau_lo = 0.5 * tau_hi;
      int n = panel_nodes(edge_base, phase * tau_hi, nodes_per_radian, node_cap);
      append_tau_panel(rule, tau_lo, tau_hi, n, sign);
    }
    // closing panels: geometric decades of tau down to ~2^{-q_max} * 1e-5
    double hi = std::ldexp(1.0, -q_max - 1);
    for (int i = 0; i < 4; ++i) {
      double lo = hi / 8.0;
      append_tau_panel(rule, lo, hi, std::max(4, edge_base / 2), sign);
      hi = lo;
    }
    append_tau_panel(rule, hi * 1e-6, hi, std::max(4, edge_base / 2), sign);
  }
  return rule;
}

}  // namespace vmf
