#pragma once

#include <vector>

#include "vmf/density.hpp"
#include "vmf/fieldrep.hpp"
#include "vmf/report.hpp"
#include "vmf/spectral.hpp"

namespace vmf {

// Fixed exponents of the dyadic summation argument, kept as exact rationals in
// check_exponents: alpha = 16/15, eps = 1/20, the two decay slopes 19/200 and
// 1/10 they produce, the final slope 1/11, and the embedding pair
// s = 1/12, delta = 2/17.
struct ExponentLedger {
  static constexpr double alpha = 16.0 / 15.0;
  static constexpr double eps = 1.0 / 20.0;
  static constexpr double slope_m_branch = 19.0 / 200.0;
  static constexpr double slope_tail = 1.0 / 10.0;
  static constexpr double final_slope = 1.0 / 11.0;
  static constexpr double sobolev_s = 1.0 / 12.0;
  static constexpr double delta = 2.0 / 17.0;
};

// ||f_j(t,.,p)||_{L^2_x} <= C 2^{3j/2} ||f_j(t,.,p)||_{L^1_x} for sampled p,
// measured on a cubic x-grid (FFT filter, then direct grid norms).
// Stability case: doubling the grid moves the fitted constant by < 5%.
EstimateReport check_bernstein(const PhaseDensity& f, double t, int j_max, int grid_n,
                               bool stability = true, int threads = 1);

// The block-norm sweep: measured/bound for every (j, k, m, n) in range.
// When `stability` is set, the sweep is repeated at doubled quadrature
// resolutions and the fitted constants must agree within 10%.
EstimateReport check_lemma21(const PhaseDensity& f, const DyadicFilterBank& bank,
                             const SpectralRules& rules, double t, int j_lo, int j_hi,
                             int shell_nodes, bool stability = false, int threads = 1);

// Dyadic shell decay of u: measured ||u_j||_{L^2} against (t + sqrt t) 2^{-j/11},
// plus the density-free summation of the block bound, which must fall at least
// as fast as 2^{-j/11} (interior maximum of the normalized ratio, decaying tail).
EstimateReport check_lemma22(const PhaseDensity& f, const DyadicFilterBank& bank,
                             const SpectralRules& rules, double t, int j_max, int shell_nodes,
                             int threads = 1);

// Exact rational identities between the ledger exponents; zero tolerance.
EstimateReport check_exponents();

// Endgame norms: for each t, ||u||_{L^{2+delta}}, ||u||_{H^s}, ||E_T||_{L^{2+delta}},
// pointwise and integrated domination |E_T| <= sqrt(2) u, and the measured
// embedding constant. The L^{2+delta} profile C(t) must be nondecreasing for
// time-frozen densities.
EstimateReport check_theorem(const PhaseDensity& f, const DyadicFilterBank& bank,
                             const SpectralRules& rules, const ConeRule& cone,
                             const std::vector<double>& t_list, bool time_frozen,
                             int threads = 1);

// Density-free summation of the block bound over k, m, n (adaptive cutoffs).
double summed_block_bound(int j, double t);

}  // namespace vmf
