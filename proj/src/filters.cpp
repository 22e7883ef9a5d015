#include "vmf/filters.hpp"

#include <cmath>

#include "vmf/smooth.hpp"

namespace vmf {

double DyadicFilterBank::profile(double r) { return smooth_step(2.0 - r); }

double DyadicFilterBank::radial(int j, double r) const {
  if (j < 0) throw std::invalid_argument("DyadicFilterBank: j < 0");
  if (j == 0) return profile(r);
  // the two profile plateaus coincide on |xi| <= 2^{j-1}, so the difference is an
  // exact 0 there, not a rounded one
  return profile(std::ldexp(r, -j)) - profile(std::ldexp(r, -j + 1));
}

double UnitIntervalPartition::bump(int k, double sigma) {
  if (sigma <= 0.0 || sigma > 1.0) return 0.0;
  if (k == 0) return smooth_step((sigma - 1.0 / 3.0) * 6.0);
  // plateau bump on (1/4, 2) in tau = 2^k sigma, identically 1 on [1/2, 1]
  double tau = std::ldexp(sigma, k);
  return smooth_step(4.0 * tau - 1.0) * smooth_step(2.0 - tau);
}

int UnitIntervalPartition::first_active(double sigma) {
  double lam = -std::log2(sigma);
  int k = static_cast<int>(std::ceil(lam)) - 2;
  return k < 0 ? 0 : k;
}

double UnitIntervalPartition::bump_sum(double sigma) {
  int first = first_active(sigma);
  return bump(first, sigma) + bump(first + 1, sigma) + bump(first + 2, sigma);
}

double UnitIntervalPartition::operator()(int k, double sigma) const {
  if (k < 0) throw std::invalid_argument("UnitIntervalPartition: k < 0");
  if (sigma <= 0.0 || sigma > 1.0)
    throw std::domain_error("UnitIntervalPartition: sigma outside (0, 1]");
  double b = bump(k, sigma);
  if (b == 0.0) return 0.0;
  return b / bump_sum(sigma);
}

}  // namespace vmf
