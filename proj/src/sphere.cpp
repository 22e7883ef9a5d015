#include "vmf/sphere.hpp"

#include <cmath>
#include <stdexcept>

#include "vmf/gauss.hpp"

namespace vmf {

SphereRule sphere_rule(int degree) {
  if (degree < 0 || degree > 4096) throw std::invalid_argument("sphere_rule: unsupported degree");
  const int n_polar = degree / 2 + 1;       // GL exact for cos^degree
  const int n_azim = degree + 1;            // uniform grid kills e^{i m theta}, |m| <= degree
  const Quad1D& gl = gauss_legendre(n_polar);
  const double pi = 3.14159265358979323846;
  const double dw = 2.0 * pi / n_azim;

  SphereRule rule;
  rule.degree = degree;
  rule.nodes.reserve(static_cast<std::size_t>(n_polar) * n_azim);
  for (int i = 0; i < n_polar; ++i) {
    double c = gl.x[i];
    double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int k = 0; k < n_azim; ++k) {
      double th = dw * k;
      rule.nodes.push_back({{s * std::cos(th), s * std::sin(th), c}, gl.w[i] * dw});
    }
  }
  return rule;
}

}  // namespace vmf
