#include "vmf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

#include "vmf/bessel.hpp"
#include "vmf/kinematics.hpp"
#include "vmf/panel_rules.hpp"
#include "vmf/parallel.hpp"
#include "vmf/sphere.hpp"
#include "vmf/spline.hpp"

namespace vmf {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
using cplx = std::complex<double>;

cplx cis(double phi) { return {std::cos(phi), std::sin(phi)}; }

double phase_budget(double rho, double t, const SpectralRules& rules) {
  return std::min(rho * std::max(t, 0.0), rules.resolve_phase_cap);
}

struct PassRules {
  WindowedRule s_rule, sigma_rule, mu_rule;
  Quad1D r_quad;
};

PassRules build_pass_rules(const PhaseDensity& f, const SpectralRules& rules, double t,
                           double rho) {
  const double phi = phase_budget(rho, t, rules);
  PassRules pr;
  pr.s_rule = make_dyadic_time_rule(rules.s_base, rules.k_max + 2, phi, rules.nodes_per_radian,
                                    rules.node_cap);
  pr.sigma_rule = make_edge_resolved_rule(rules.sigma_center, rules.sigma_edge, rules.m_max + 2,
                                          phi, rules.nodes_per_radian, rules.node_cap);
  pr.mu_rule = make_edge_resolved_rule(rules.mu_center, rules.mu_edge, rules.n_max + 2, phi,
                                       rules.nodes_per_radian, rules.node_cap);
  pr.r_quad = gauss_legendre(rules.p_radial, 0.0, f.support_radius_p());
  return pr;
}

// (1 + a_r sigma_l)^{-3/2} for every (radial, sigma) node pair
std::vector<double> power_table(const Quad1D& rq, const WindowedRule& sig) {
  std::vector<double> P(rq.size() * sig.nodes.size());
  for (std::size_t ir = 0; ir < rq.size(); ++ir) {
    double a = speed_of_radius(rq.x[ir]);
    for (std::size_t l = 0; l < sig.nodes.size(); ++l) {
      double d = 1.0 + a * sig.nodes[l].x;
      P[ir * sig.nodes.size() + l] = 1.0 / (d * std::sqrt(d));
    }
  }
  return P;
}

struct PassResult {
  cplx full{};
  std::vector<cplx> kmn;  // present when windowed
};

// Core quadrature tensor for a separable density at xi = rho * e. Returns the
// triple integral without the leading 2pi * t * Fx(rho) prefactor.
PassResult separable_pass(const SeparableFourier& sf, const PhaseDensity& f,
                          const SpectralRules& rules, double t, double rho, bool windowed) {
  PassResult out;
  const int km = rules.k_max, mm = rules.m_max, nm = rules.n_max;
  if (windowed) out.kmn.assign(static_cast<std::size_t>(km + 1) * (mm + 1) * (nm + 1), cplx{});
  if (t <= 0.0) return out;

  PassRules pr = build_pass_rules(f, rules, t, rho);
  const auto& sn = pr.s_rule.nodes;
  const auto& mn = pr.mu_rule.nodes;
  const auto& gn = pr.sigma_rule.nodes;
  const std::size_t NS = sn.size(), NM = mn.size(), NG = gn.size(), NR = pr.r_quad.size();

  const std::vector<double> P = power_table(pr.r_quad, pr.sigma_rule);

  // radial momentum weights w_r r^2 (1+r^2)^{-1} Wp(r), and speeds
  std::vector<double> rw(NR), speeds(NR);
  for (std::size_t ir = 0; ir < NR; ++ir) {
    double r = pr.r_quad.x[ir];
    rw[ir] = pr.r_quad.w[ir] * r * r / (1.0 + r * r) * sf.radial_p(r);
    speeds[ir] = speed_of_radius(r);
  }

  // frozen densities: the radial sum collapses once per sigma node
  std::vector<double> V;
  if (!sf.free_streaming) {
    V.assign(NG, 0.0);
    for (std::size_t l = 0; l < NG; ++l) {
      double acc = 0.0;
      for (std::size_t ir = 0; ir < NR; ++ir) acc += rw[ir] * P[ir * NG + l];
      V[l] = kTwoPi * acc;
    }
  }

  // J0 factors J0(A tau_l) and phases cis(pc sigma_l) vary per (s, mu);
  // m-window partial sums collapse the sigma loop to <= m_max + 1 complex bins.
  std::vector<cplx> Vsm(sf.free_streaming ? NG : 0);
  std::vector<cplx> accm(static_cast<std::size_t>(mm) + 2);
  std::vector<cplx> rphase(NR);

  for (std::size_t is = 0; is < NS; ++is) {
    const auto& snode = sn[is];
    const double s = t * snode.x;
    const double ws = snode.w;
    // s windows
    int kf = snode.win_first;

    for (std::size_t iq = 0; iq < NM; ++iq) {
      const auto& mnode = mn[iq];
      const double mu = mnode.x;
      const double pc = s * rho * mu;
      const double A = s * rho * mnode.tau;

      const std::vector<cplx>* Vp = nullptr;
      if (sf.free_streaming) {
        const double tr = t - s;  // retarded time multiplies the transport phase
        for (std::size_t ir = 0; ir < NR; ++ir)
          rphase[ir] = rw[ir] * cis(-tr * rho * speeds[ir] * mu);
        for (std::size_t l = 0; l < NG; ++l) {
          cplx acc{};
          const double* Pl = P.data() + l;
          for (std::size_t ir = 0; ir < NR; ++ir) acc += rphase[ir] * Pl[ir * NG];
          Vsm[l] = kTwoPi * acc;
        }
        Vp = &Vsm;
      }

      cplx full_sigma{};
      std::fill(accm.begin(), accm.end(), cplx{});
      for (std::size_t l = 0; l < NG; ++l) {
        const auto& g = gn[l];
        const double j0 = bessel_j0(std::abs(A * g.tau));
        const cplx z = cis(pc * g.x) * (j0 * g.w) *
                       (sf.free_streaming ? (*Vp)[l] : cplx(V[l]));
        full_sigma += z;
        if (windowed) {
          for (int d = 0; d < 3; ++d) {
            int midx = g.win_first + d;
            if (midx <= mm && g.win[d] != 0.0) accm[midx] += z * g.win[d];
          }
        }
      }

      const double wsm = ws * mnode.w;
      out.full += wsm * full_sigma;
      if (windowed) {
        for (int dk = 0; dk < 3; ++dk) {
          int kk = kf + dk;
          if (kk > km || snode.win[dk] == 0.0) continue;
          for (int dn = 0; dn < 3; ++dn) {
            int nn = mnode.win_first + dn;
            if (nn > nm || mnode.win[dn] == 0.0) continue;
            const double wkn = wsm * snode.win[dk] * mnode.win[dn];
            cplx* row = out.kmn.data() + (static_cast<std::size_t>(kk) * (mm + 1)) * (nm + 1);
            for (int midx = 0; midx <= mm; ++midx)
              row[static_cast<std::size_t>(midx) * (nm + 1) + nn] += wkn * accm[midx];
          }
        }
      }
    }
  }
  return out;
}

cplx generic_pass(const PhaseDensity& f, const SpectralRules& rules, double t, const Vec3& xi,
                  const BlockIndex* idx, const DyadicFilterBank* bank) {
  if (!f.has_fourier())
    throw std::invalid_argument("uhat: density provides no spatial Fourier transform");
  if (t <= 0.0) return {};
  const double rho = norm(xi);
  const Vec3 axis = rho > 0.0 ? xi / rho : Vec3{0.0, 0.0, 1.0};
  Vec3 e1, e2;
  orthonormal_frame(axis, e1, e2);

  PassRules pr = build_pass_rules(f, rules, t, rho);
  const auto& sn = pr.s_rule.nodes;
  const auto& mn = pr.mu_rule.nodes;
  const auto& gn = pr.sigma_rule.nodes;
  const std::size_t NG = gn.size(), NR = pr.r_quad.size();
  const std::vector<double> P = power_table(pr.r_quad, pr.sigma_rule);
  const int n_phi = rules.p_azimuth;
  const double w_phi = kTwoPi / n_phi;

  UnitIntervalPartition part;
  std::vector<cplx> jj(NG);
  cplx total{};
  for (const auto& snode : sn) {
    const double s = t * snode.x;
    double wk = 1.0;
    if (idx != nullptr) {
      wk = part(idx->k, snode.x);
      if (wk == 0.0) continue;
    }
    for (const auto& mnode : mn) {
      const double mu = mnode.x;
      double wn = 1.0;
      if (idx != nullptr) {
        wn = mnode.tau > 0.0 && mnode.tau <= 1.0 ? part(idx->n, mnode.tau) : 0.0;
        if (wn == 0.0) continue;
      }
      const double pc = s * rho * mu;
      const double A = s * rho * mnode.tau;
      for (std::size_t l = 0; l < NG; ++l) {
        const auto& g = gn[l];
        double wm = 1.0;
        if (idx != nullptr) wm = g.tau > 0.0 && g.tau <= 1.0 ? part(idx->m, g.tau) : 0.0;
        jj[l] = wm == 0.0 ? cplx{}
                          : cis(pc * g.x) * (bessel_j0(std::abs(A * g.tau)) * g.w * wm);
      }
      const double smu = mnode.tau;
      cplx acc_r{};
      for (std::size_t ir = 0; ir < NR; ++ir) {
        const double r = pr.r_quad.x[ir];
        cplx G{};
        for (int ip = 0; ip < n_phi; ++ip) {
          const double phi = w_phi * ip;
          const Vec3 pvec =
              (mu * axis + smu * (std::cos(phi) * e1 + std::sin(phi) * e2)) * r;
          G += f.fourier_x(t - s, xi, pvec);
        }
        G *= w_phi;
        cplx sig{};
        const double* Pl = P.data() + ir * NG;
        for (std::size_t l = 0; l < NG; ++l) sig += jj[l] * Pl[l];
        acc_r += pr.r_quad.w[ir] * r * r / (1.0 + r * r) * G * sig;
      }
      total += snode.w * mnode.w * wk * (idx ? wn : 1.0) * acc_r;
    }
  }
  double filter = 1.0;
  if (idx != nullptr && bank != nullptr) filter = bank->radial(idx->j, rho);
  return kTwoPi * t * filter * total;
}

}  // namespace

// ---------------------------------------------------------------------------
// bound formula

double block_bound(const BlockIndex& idx, double t) {
  if (idx.j < 1 || idx.k < 0 || idx.m < 0 || idx.n < 0 || t <= 0.0)
    throw std::invalid_argument("block_bound: need j >= 1, k,m,n >= 0, t > 0");
  const double first =
      std::min(1.0, std::exp2(0.5 * (idx.k + idx.m + idx.n - idx.j)) / std::sqrt(t));
  const double m_branch = std::exp2(-2.0 * idx.m + 1.5 * idx.j);
  const double n_branch = (std::sqrt(double(idx.n)) + std::sqrt(double(idx.j))) *
                          std::exp2(-double(idx.n));
  return t * first * std::exp2(-double(idx.k)) * std::min(m_branch, n_branch);
}

const char* block_bound_branch(const BlockIndex& idx) {
  const double m_branch = std::exp2(-2.0 * idx.m + 1.5 * idx.j);
  const double n_branch = (std::sqrt(double(idx.n)) + std::sqrt(double(idx.j))) *
                          std::exp2(-double(idx.n));
  return m_branch <= n_branch ? "m" : "n";
}

// ---------------------------------------------------------------------------
// sphere integral, two routes

std::complex<double> sphere_oscillatory(double s, const Vec3& xi, const Vec3& p,
                                        OscMethod method) {
  const double rho = norm(xi);
  const double pmag = norm(p);
  const double sr = s * rho;

  if (method == OscMethod::direct) {
    const double a = speed_of_radius(pmag);
    int extra = 40;
    if (a > 0.5) {
      double z = 1.0 / a;
      double rb = z + std::sqrt(z * z - 1.0);
      extra = 40 + static_cast<int>(30.0 / std::log(rb));
    }
    int degree = std::min(2000, static_cast<int>(std::ceil(1.1 * sr)) + extra);
    SphereRule rule = sphere_rule(degree);
    const Vec3 v = pmag > 0.0 ? p * (a / pmag) : Vec3{};
    cplx acc{};
    for (const auto& node : rule.nodes) {
      double d = 1.0 + dot(v, node.omega);
      acc += node.weight * cis(s * dot(xi, node.omega)) / (d * std::sqrt(d));
    }
    return acc;
  }

  // reduced route
  if (pmag == 0.0) {
    // frame degenerates; plane-wave sphere integral in closed form
    if (sr == 0.0) return 4.0 * kPi;
    return 4.0 * kPi * std::sin(sr) / sr;
  }
  const double a = speed_of_radius(pmag);
  const double mu = rho > 0.0 ? std::clamp(dot(xi, p) / (rho * pmag), -1.0, 1.0) : 1.0;
  const double tau_mu = std::sqrt(std::max(0.0, 1.0 - mu * mu));

  // resolve both the oscillation (phase ~ s|xi|) and the (1+a sigma)^{-3/2}
  // peak whose tau scale is sqrt(2(1-a)/a)
  double tau_star = std::sqrt(2.0 * (1.0 - a) / std::max(a, 0.5));
  int q_max = std::clamp(static_cast<int>(std::ceil(std::log2(4.0 / tau_star))), 6, 40);
  int center = 32 + static_cast<int>(std::ceil(0.6 * sr));
  WindowedRule sig = make_edge_resolved_rule(center, 12, q_max, sr, 0.6, 4000);

  cplx acc{};
  for (const auto& g : sig.nodes) {
    double d = 1.0 + a * g.x;
    acc += g.w * cis(sr * mu * g.x) * bessel_j0(std::abs(sr * tau_mu * g.tau)) /
           (d * std::sqrt(d));
  }
  return kTwoPi * acc;
}

// ---------------------------------------------------------------------------
// uhat and blocks

std::complex<double> uhat_radial(double t, double rho, const PhaseDensity& f,
                                 const SpectralRules& rules) {
  auto sf = f.separable_fourier();
  if (!sf) throw std::invalid_argument("uhat_radial: density transform is not separable");
  const double fx = sf->radial_x(rho);
  if (fx == 0.0 || t <= 0.0) return {};
  PassResult res = separable_pass(*sf, f, rules, t, rho, false);
  return kTwoPi * t * fx * res.full;
}

std::complex<double> uhat(double t, const Vec3& xi, const PhaseDensity& f,
                          const SpectralRules& rules) {
  if (!f.has_fourier())
    throw std::invalid_argument("uhat: density provides no spatial Fourier transform");
  if (t < 0.0) throw std::domain_error("uhat: t < 0");
  if (t == 0.0) return {};
  auto sf = f.separable_fourier();
  if (sf) return cis(-dot(xi, sf->center)) * uhat_radial(t, norm(xi), f, rules);
  return generic_pass(f, rules, t, xi, nullptr, nullptr);
}

RadialBlockTable block_pass_radial(int j, double t, double rho, const PhaseDensity& f,
                                   const DyadicFilterBank& bank, const SpectralRules& rules) {
  auto sf = f.separable_fourier();
  if (!sf) throw std::invalid_argument("block_pass_radial: density transform is not separable");
  RadialBlockTable tab;
  tab.k_max = rules.k_max;
  tab.m_max = rules.m_max;
  tab.n_max = rules.n_max;
  tab.kmn.assign(static_cast<std::size_t>(rules.k_max + 1) * (rules.m_max + 1) *
                     (rules.n_max + 1),
                 cplx{});
  const double filter = bank.radial(j, rho);
  const double fx = sf->radial_x(rho);
  if (filter == 0.0 || fx == 0.0 || t <= 0.0) return tab;
  PassResult res = separable_pass(*sf, f, rules, t, rho, true);
  const cplx pre = kTwoPi * t * fx * filter;
  for (std::size_t i = 0; i < tab.kmn.size(); ++i) tab.kmn[i] = pre * res.kmn[i];
  tab.filtered = pre * res.full;
  return tab;
}

std::complex<double> uhat_block(const BlockIndex& idx, double t, const Vec3& xi,
                                const PhaseDensity& f, const DyadicFilterBank& bank,
                                const SpectralRules& rules) {
  if (idx.j < 0 || idx.k < 0 || idx.m < 0 || idx.n < 0)
    throw std::invalid_argument("uhat_block: negative index");
  if (t < 0.0) throw std::domain_error("uhat_block: t < 0");
  const double rho = norm(xi);
  if (bank.radial(idx.j, rho) == 0.0) return {};
  auto sf = f.separable_fourier();
  if (sf) {
    SpectralRules local = rules;
    local.k_max = std::max(rules.k_max, idx.k);
    local.m_max = std::max(rules.m_max, idx.m);
    local.n_max = std::max(rules.n_max, idx.n);
    RadialBlockTable tab = block_pass_radial(idx.j, t, rho, f, bank, local);
    return cis(-dot(xi, sf->center)) *
           tab.kmn[(static_cast<std::size_t>(idx.k) * (local.m_max + 1) + idx.m) *
                       (local.n_max + 1) +
                   idx.n];
  }
  return generic_pass(f, rules, t, xi, &idx, &bank);
}

// ---------------------------------------------------------------------------
// norms

XiShellGrid make_xi_shell(int j, int n_radial) {
  if (j < 0 || n_radial < 2) throw std::invalid_argument("make_xi_shell: bad arguments");
  XiShellGrid g;
  g.j = j;
  if (j == 0) {
    g.radial = gauss_legendre(n_radial, 0.0, 2.0);
  } else {
    // log-spaced over [2^{j-1}, 2^{j+1}]
    double lo = std::log(std::exp2(j - 1)), hi = std::log(std::exp2(j + 1));
    Quad1D y = gauss_legendre(n_radial, lo, hi);
    g.radial.x.resize(y.size());
    g.radial.w.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      g.radial.x[i] = std::exp(y.x[i]);
      g.radial.w[i] = y.w[i] * g.radial.x[i];
    }
  }
  return g;
}

std::vector<BlockNorm> block_norm_sweep(int j, double t, const PhaseDensity& f,
                                        const DyadicFilterBank& bank, const SpectralRules& rules,
                                        const XiShellGrid& grid, int threads) {
  if (grid.j != j) throw std::invalid_argument("block_norm_sweep: grid built for another shell");
  const std::size_t nr = grid.radial.size();
  std::vector<RadialBlockTable> tables(nr);
  parallel_for(nr, threads, [&](std::size_t i) {
    tables[i] = block_pass_radial(j, t, grid.radial.x[i], f, bank, rules);
  });

  std::vector<BlockNorm> out;
  out.reserve(static_cast<std::size_t>(rules.k_max + 1) * (rules.m_max + 1) * (rules.n_max + 1));
  for (int k = 0; k <= rules.k_max; ++k)
    for (int m = 0; m <= rules.m_max; ++m)
      for (int n = 0; n <= rules.n_max; ++n) {
        std::vector<double> terms(nr);
        for (std::size_t i = 0; i < nr; ++i) {
          double rho = grid.radial.x[i];
          terms[i] = grid.radial.w[i] * rho * rho * std::norm(tables[i].at(k, m, n));
        }
        BlockNorm bn;
        bn.index = {j, k, m, n};
        bn.t = t;
        bn.measured = std::sqrt(4.0 * kPi * pairwise_sum(terms));
        bn.bound = block_bound(bn.index, t);
        out.push_back(bn);
      }
  return out;
}

BlockNorm block_l2_norm(const BlockIndex& idx, double t, const PhaseDensity& f,
                        const DyadicFilterBank& bank, const SpectralRules& rules,
                        const XiShellGrid& grid) {
  if (grid.j != idx.j) throw std::invalid_argument("block_l2_norm: grid covers another shell");
  SpectralRules local = rules;
  local.k_max = std::max(rules.k_max, idx.k);
  local.m_max = std::max(rules.m_max, idx.m);
  local.n_max = std::max(rules.n_max, idx.n);
  const std::size_t nr = grid.radial.size();
  std::vector<double> terms(nr);
  for (std::size_t i = 0; i < nr; ++i) {
    double rho = grid.radial.x[i];
    RadialBlockTable tab = block_pass_radial(idx.j, t, rho, f, bank, local);
    terms[i] = grid.radial.w[i] * rho * rho * std::norm(tab.at(idx.k, idx.m, idx.n));
  }
  BlockNorm bn;
  bn.index = idx;
  bn.t = t;
  bn.measured = std::sqrt(4.0 * kPi * pairwise_sum(terms));
  bn.bound = block_bound(idx, t);
  return bn;
}

double uj_l2_norm(int j, double t, const PhaseDensity& f, const DyadicFilterBank& bank,
                  const SpectralRules& rules, const XiShellGrid& grid) {
  if (grid.j != j) throw std::invalid_argument("uj_l2_norm: grid covers another shell");
  auto sf = f.separable_fourier();
  const std::size_t nr = grid.radial.size();
  std::vector<double> terms(nr, 0.0);
  if (sf) {
    for (std::size_t i = 0; i < nr; ++i) {
      double rho = grid.radial.x[i];
      double filter = bank.radial(j, rho);
      if (filter == 0.0) continue;
      cplx h = uhat_radial(t, rho, f, rules);
      terms[i] = grid.radial.w[i] * rho * rho * std::norm(filter * h);
    }
    double l2_xi_sq = 4.0 * kPi * pairwise_sum(terms);
    return std::sqrt(l2_xi_sq / FourierConvention::plancherel_factor());
  }
  // generic densities: shell quadrature with a moderate sphere rule
  SphereRule sphere = sphere_rule(23);
  for (std::size_t i = 0; i < nr; ++i) {
    double rho = grid.radial.x[i];
    double filter = bank.radial(j, rho);
    if (filter == 0.0) continue;
    double ang = 0.0;
    for (const auto& node : sphere.nodes) {
      cplx u = uhat(t, node.omega * rho, f, rules);
      ang += node.weight * std::norm(filter * u);
    }
    terms[i] = grid.radial.w[i] * rho * rho * ang;
  }
  return std::sqrt(pairwise_sum(terms) / FourierConvention::plancherel_factor());
}

// ---------------------------------------------------------------------------
// cubic-grid reconstruction

void fft3_inplace(std::vector<std::complex<double>>& buf, int n, int sign) {
  if (buf.size() != static_cast<std::size_t>(n) * n * n)
    throw std::invalid_argument("fft3_inplace: buffer size mismatch");
  static std::mutex fftw_mutex;  // planner is not thread-safe
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex);
    plan = fftw_plan_dft_3d(n, n, n, reinterpret_cast<fftw_complex*>(buf.data()),
                            reinterpret_cast<fftw_complex*>(buf.data()),
                            sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_mutex);
    fftw_destroy_plan(plan);
  }
}

CubeSpec choose_cube(const PhaseDensity& f, double t, int n) {
  if (n % 4 != 0) throw std::invalid_argument("choose_cube: n must be divisible by 4");
  CubeSpec c;
  c.n = n;
  c.center = f.center_x();
  double half_extent = f.support_radius_x(t) + t + 2.0;
  c.dxi = kPi / half_extent;
  return c;
}

UGrid reconstruct_u(double t, const PhaseDensity& f, const SpectralRules& rules,
                    const CubeSpec& cube, int profile_nodes, int threads) {
  const int n = cube.n;
  const int c = n / 2;
  const double rho_max = std::sqrt(3.0) * c * cube.dxi * 1.0001;
  if (profile_nodes < 8) throw std::invalid_argument("reconstruct_u: too few profile nodes");

  // 1-d radial profile, then spline
  const double h = rho_max / (profile_nodes - 1);
  std::vector<double> prof(profile_nodes, 0.0);
  parallel_for(profile_nodes, threads, [&](std::size_t i) {
    prof[i] = uhat_radial(t, i * h, f, rules).real();
  });
  UniformSpline spline(0.0, h, std::move(prof));

  // fill the xi cube with the checkerboard twist, backward FFT, untwist
  std::vector<std::complex<double>> buf(static_cast<std::size_t>(n) * n * n);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
    for (int jj = 0; jj < n; ++jj)
      for (int k = 0; k < n; ++k) {
        double x1 = (static_cast<int>(i) - c) * cube.dxi;
        double x2 = (jj - c) * cube.dxi;
        double x3 = (k - c) * cube.dxi;
        double rho = std::sqrt(x1 * x1 + x2 * x2 + x3 * x3);
        double val = spline(rho);
        int sign = ((static_cast<int>(i) + jj + k) & 1) ? -1 : 1;
        buf[(i * n + jj) * n + k] = sign * val;
      }
  });

  fft3_inplace(buf, n, +1);

  UGrid g;
  g.spec = cube;
  g.u.resize(buf.size());
  const double scale = cube.dxi * cube.dxi * cube.dxi / FourierConvention::plancherel_factor();
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj)
      for (int k = 0; k < n; ++k) {
        std::size_t id = (static_cast<std::size_t>(i) * n + jj) * n + k;
        int sign = ((i + jj + k) & 1) ? -1 : 1;
        g.u[id] = sign * scale * buf[id].real();
      }
  return g;
}

double grid_lq_norm(const UGrid& g, double q) {
  if (q <= 0.0) throw std::invalid_argument("grid_lq_norm: q <= 0");
  long double acc = 0.0;
  for (double v : g.u) acc += std::pow(std::abs(v), q);
  double dx = g.spec.dx();
  return static_cast<double>(std::pow(acc * dx * dx * dx, 1.0 / static_cast<long double>(q)));
}

double grid_l2_norm(const UGrid& g) {
  long double acc = 0.0;
  for (double v : g.u) acc += static_cast<long double>(v) * v;
  double dx = g.spec.dx();
  return std::sqrt(static_cast<double>(acc) * dx * dx * dx);
}

SobolevLq sobolev_lq_norms(double t, const PhaseDensity& f, double s, double q,
                           const DyadicFilterBank& bank, const SpectralRules& rules,
                           const CubeSpec& cube, int j_cap, int shell_nodes, int threads) {
  if (q <= 2.0) throw std::invalid_argument("sobolev_lq_norms: need q > 2");
  if (s <= 0.0 || s >= 1.5) throw std::invalid_argument("sobolev_lq_norms: need 0 < s < 3/2");
  SobolevLq out;
  std::vector<double> uj(static_cast<std::size_t>(j_cap) + 1, 0.0);
  parallel_for(static_cast<std::size_t>(j_cap) + 1, threads, [&](std::size_t j) {
    XiShellGrid grid = make_xi_shell(static_cast<int>(j), shell_nodes);
    uj[j] = uj_l2_norm(static_cast<int>(j), t, f, bank, rules, grid);
  });
  double acc = uj[0] * uj[0];
  for (int j = 1; j <= j_cap; ++j) acc += std::exp2(2.0 * s * j) * uj[j] * uj[j];
  out.hs_norm = std::sqrt(acc);

  UGrid g = reconstruct_u(t, f, rules, cube, 400, threads);
  out.lq_norm = grid_lq_norm(g, q);
  return out;
}

}  // namespace vmf
