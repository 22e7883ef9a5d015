#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace vmf {

// Natural cubic spline on a uniform grid [x0, x0 + (n-1)h].
class UniformSpline {
 public:
  UniformSpline() = default;
  UniformSpline(double x0, double h, std::vector<double> y) : x0_(x0), h_(h), y_(std::move(y)) {
    const std::size_t n = y_.size();
    if (n < 4) throw std::invalid_argument("UniformSpline: need >= 4 points");
    // m_i = S''(x_i): m_{i-1} + 4 m_i + m_{i+1} = 6 (y_{i+1} - 2 y_i + y_{i-1}) / h^2,
    // natural ends m_0 = m_{n-1} = 0. Thomas algorithm.
    m_.assign(n, 0.0);
    std::vector<double> diag(n, 4.0), rhs(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i)
      rhs[i] = 6.0 * (y_[i + 1] - 2.0 * y_[i] + y_[i - 1]) / (h_ * h_);
    for (std::size_t i = 2; i + 1 < n; ++i) {
      double w = 1.0 / diag[i - 1];
      diag[i] -= w;
      rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
      m_[i] = (rhs[i] - m_[i + 1]) / diag[i];
      if (i == 1) break;
    }
  }

  double min_x() const { return x0_; }
  double max_x() const { return x0_ + h_ * (y_.size() - 1); }

  double operator()(double x) const {
    const std::size_t n = y_.size();
    double u = (x - x0_) / h_;
    if (u <= 0.0) return y_.front();
    if (u >= double(n - 1)) return y_.back();
    std::size_t i = static_cast<std::size_t>(u);
    double a = u - i;
    double b = 1.0 - a;
    return b * y_[i] + a * y_[i + 1] +
           ((b * b * b - b) * m_[i] + (a * a * a - a) * m_[i + 1]) * (h_ * h_) / 6.0;
  }

 private:
  double x0_ = 0.0, h_ = 1.0;
  std::vector<double> y_, m_;
};

}  // namespace vmf
