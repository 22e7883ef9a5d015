#pragma once

#include <vector>

namespace vmf {

struct Quad1D {
  std::vector<double> x;  // nodes
  std::vector<double> w;  // weights
  std::size_t size() const { return x.size(); }
};

// Gauss-Legendre rule on [-1, 1]. Results are cached per n; thread-safe.
const Quad1D& gauss_legendre(int n);

// Affine image of gauss_legendre(n) on [a, b].
Quad1D gauss_legendre(int n, double a, double b);

}  // namespace vmf
