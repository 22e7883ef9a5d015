#pragma once

#include <complex>
#include <vector>

#include "vmf/density.hpp"
#include "vmf/filters.hpp"
#include "vmf/gauss.hpp"
#include "vmf/vec3.hpp"

namespace vmf {

// Fourier convention, fixed for the whole toolkit:
//   uhat(xi) = int e^{-i xi.x} u(x) dx,   int |uhat|^2 dxi = (2pi)^3 int |u|^2 dx.
struct FourierConvention {
  static constexpr double forward_sign = -1.0;
  static double plancherel_factor() { return 248.05021344239853;  /* (2pi)^3 */ }
};

// Quadrature knobs for the spectral route. `resolve_phase_cap` is the largest
// oscillation budget (phase = t * |xi|) the rules fully resolve; beyond it the
// node counts stop growing. Shells whose spectral content is many orders below
// the filter scale land there, where an O(1) relative error on a ~1e-25
// quantity is irrelevant to every measured ratio.
struct SpectralRules {
  int p_radial = 32;
  int sigma_center = 48, sigma_edge = 10;
  int mu_center = 40, mu_edge = 10;
  int s_base = 8;
  double nodes_per_radian = 0.6;
  int node_cap = 4000;
  double resolve_phase_cap = 320.0;
  int p_azimuth = 8;  // generic-density path only
  int k_max = 6, m_max = 6, n_max = 6;

  SpectralRules scaled(double factor) const {
    SpectralRules r = *this;
    auto s = [factor](int v) { return static_cast<int>(v * factor); };
    r.p_radial = s(r.p_radial);
    r.sigma_center = s(r.sigma_center);
    r.sigma_edge = s(r.sigma_edge);
    r.mu_center = s(r.mu_center);
    r.mu_edge = s(r.mu_edge);
    r.s_base = s(r.s_base);
    r.nodes_per_radian *= factor;
    r.resolve_phase_cap *= factor;
    return r;
  }
};

struct BlockIndex {
  int j = 0, k = 0, m = 0, n = 0;
};

struct BlockNorm {
  BlockIndex index;
  double t = 0.0;
  double measured = 0.0;  // ||uhat_{jkmn}(t,.)||_{L^2_xi}
  double bound = 0.0;     // reference bound with constant 1
};

// t * min(1, 2^{(k+m+n-j)/2}/sqrt(t)) * 2^{-k} * min(2^{-2m} 2^{3j/2}, (sqrt n + sqrt j) 2^{-n})
double block_bound(const BlockIndex& idx, double t);
// "m" when the first argument of the trailing min is active, else "n"
const char* block_bound_branch(const BlockIndex& idx);

// --------------------------------------------------------------------------
// sphere integral of e^{i s xi.w} (1 + v.w)^{-3/2}

enum class OscMethod { direct, bessel };

// direct: quadrature over the sphere; bessel: the frame-reduced line integral
//   2pi int_{-1}^{1} cis(s sigma xi.vbar) (1+|v|sigma)^{-3/2}
//       J0(s |xi| sqrt(1-(xibar.vbar)^2) sqrt(1-sigma^2)) dsigma.
// p = 0 with the bessel method falls back to the closed form 4pi sinc(s|xi|).
std::complex<double> sphere_oscillatory(double s, const Vec3& xi, const Vec3& p, OscMethod method);

// --------------------------------------------------------------------------
// uhat and its triple decomposition

// uhat(t, xi) = 2pi int_0^t ds int dp (1+p^2)^{-1} fhat(t-s, xi, p) x [reduced
// sphere integral]. Requires a density with fourier_x.
std::complex<double> uhat(double t, const Vec3& xi, const PhaseDensity& f,
                          const SpectralRules& rules);

// Triple-windowed block value at a single xi; identically 0 outside the
// dyadic shell of filter j.
std::complex<double> uhat_block(const BlockIndex& idx, double t, const Vec3& xi,
                                const PhaseDensity& f, const DyadicFilterBank& bank,
                                const SpectralRules& rules);

// Radial profile value H(t, rho) = uhat(t, rho e) * cis(+rho e . x0) for
// densities with a separable transform (then uhat = cis(-xi.x0) H(|xi|)).
std::complex<double> uhat_radial(double t, double rho, const PhaseDensity& f,
                                 const SpectralRules& rules);

// All windowed radial values H_{jkmn}(t, rho), k,m,n <= rules maxima, in one
// pass over the quadrature tensor, plus the unwindowed filtered value.
struct RadialBlockTable {
  int k_max, m_max, n_max;
  std::vector<std::complex<double>> kmn;  // (k,m,n) row-major
  std::complex<double> filtered;          // phi_j(rho) * H(t, rho)

  std::complex<double> at(int k, int m, int n) const {
    return kmn[static_cast<std::size_t>((k * (m_max + 1) + m) * (n_max + 1) + n)];
  }
};
RadialBlockTable block_pass_radial(int j, double t, double rho, const PhaseDensity& f,
                                   const DyadicFilterBank& bank, const SpectralRules& rules);

// --------------------------------------------------------------------------
// xi grids and norms

// Radial quadrature over the dyadic shell of filter j (log-spaced Gauss).
struct XiShellGrid {
  int j = 0;
  Quad1D radial;
};
XiShellGrid make_xi_shell(int j, int n_radial);

// L^2_xi norm of one block over its shell (isotropic-density fast path).
BlockNorm block_l2_norm(const BlockIndex& idx, double t, const PhaseDensity& f,
                        const DyadicFilterBank& bank, const SpectralRules& rules,
                        const XiShellGrid& grid);

// Every block of shell j in one sweep; deterministic across thread counts.
std::vector<BlockNorm> block_norm_sweep(int j, double t, const PhaseDensity& f,
                                        const DyadicFilterBank& bank, const SpectralRules& rules,
                                        const XiShellGrid& grid, int threads = 1);

// ||u_j(t,.)||_{L^2_x} = (2pi)^{-3/2} ||phi_j uhat||_{L^2_xi}.
double uj_l2_norm(int j, double t, const PhaseDensity& f, const DyadicFilterBank& bank,
                  const SpectralRules& rules, const XiShellGrid& grid);

// --------------------------------------------------------------------------
// cubic-grid reconstruction

struct CubeSpec {
  int n = 64;        // per-axis sample count (divisible by 4)
  double dxi = 0.25; // xi spacing
  Vec3 center{};     // spatial center (phase removal)
  double dx() const { return 2.0 * 3.14159265358979323846 / (n * dxi); }
};

// extent chosen from the density support at time t and its spectral decay
CubeSpec choose_cube(const PhaseDensity& f, double t, int n);

struct UGrid {
  CubeSpec spec;
  std::vector<double> u;  // n^3 values, index ((i*n)+j)*n+k
  Vec3 x_at(int i, int jj, int k) const {
    double h = spec.dx();
    int c = spec.n / 2;
    return spec.center + Vec3{(i - c) * h, (jj - c) * h, (k - c) * h};
  }
  double at(int i, int jj, int k) const {
    return u[(static_cast<std::size_t>(i) * spec.n + jj) * spec.n + k];
  }
};

// u on the physical grid by inverse FFT of the radial-profile uhat.
// profile_nodes controls the 1-d sampling of H(t, rho).
UGrid reconstruct_u(double t, const PhaseDensity& f, const SpectralRules& rules,
                    const CubeSpec& cube, int profile_nodes = 400, int threads = 1);

// In-place complex 3-d FFT on an n^3 buffer (deterministic FFTW estimate
// plans); sign = -1 forward, +1 backward. No normalization applied.
void fft3_inplace(std::vector<std::complex<double>>& buf, int n, int sign);

double grid_lq_norm(const UGrid& g, double q);
double grid_l2_norm(const UGrid& g);

// (H^s norm via the dyadic characterization, L^q norm via reconstruction).
// Requires 0 < s < 3/2 and q > 2.
struct SobolevLq {
  double hs_norm = 0.0;
  double lq_norm = 0.0;
};
SobolevLq sobolev_lq_norms(double t, const PhaseDensity& f, double s, double q,
                           const DyadicFilterBank& bank, const SpectralRules& rules,
                           const CubeSpec& cube, int j_cap = 12, int shell_nodes = 32,
                           int threads = 1);

}  // namespace vmf
