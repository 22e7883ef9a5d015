#include "vmf/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/rational.hpp>

#include "vmf/kernels.hpp"
#include "vmf/parallel.hpp"

namespace vmf {

namespace {

constexpr double kPi = 3.14159265358979323846;
using cplx = std::complex<double>;
using rat = boost::rational<long long>;

// f_j on a cubic grid: sample, forward FFT, radial filter, inverse FFT.
// Returns (L2, L1) of f_j over the grid.
std::pair<double, double> filtered_norms(const PhaseDensity& f, double t, const Vec3& p, int j,
                                         int n, double half_extent,
                                         const DyadicFilterBank& bank, int threads) {
  const double dx = 2.0 * half_extent / n;
  const double dxi = 2.0 * kPi / (n * dx);
  const int c = n / 2;
  const Vec3 x0 = f.center_x();
  std::vector<cplx> buf(static_cast<std::size_t>(n) * n * n);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
    for (int jj = 0; jj < n; ++jj)
      for (int k = 0; k < n; ++k) {
        Vec3 x = x0 + Vec3{(static_cast<int>(i) - c) * dx, (jj - c) * dx, (k - c) * dx};
        int sign = ((static_cast<int>(i) + jj + k) & 1) ? -1 : 1;
        buf[(i * n + jj) * n + k] = sign * f.evaluate(t, x, p);
      }
  });
  fft3_inplace(buf, n, -1);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
    for (int jj = 0; jj < n; ++jj)
      for (int k = 0; k < n; ++k) {
        double k1 = (static_cast<int>(i) - c) * dxi;
        double k2 = (jj - c) * dxi;
        double k3 = (k - c) * dxi;
        double rho = std::sqrt(k1 * k1 + k2 * k2 + k3 * k3);
        buf[(i * n + jj) * n + k] *= bank.radial(j, rho);
      }
  });
  fft3_inplace(buf, n, +1);
  long double l2 = 0.0, l1 = 0.0;
  const double inv = 1.0 / (static_cast<double>(n) * n * n);
  for (const auto& z : buf) {
    double v = std::abs(z) * inv;  // twists cancel in magnitude
    l1 += v;
    l2 += static_cast<long double>(v) * v;
  }
  const double cell = dx * dx * dx;
  return {std::sqrt(static_cast<double>(l2) * cell), static_cast<double>(l1) * cell};
}

double bernstein_fit(const PhaseDensity& f, double t, int j_max, int grid_n,
                     const DyadicFilterBank& bank, int threads, EstimateReport* rep) {
  const double half = f.support_radius_x(t) * 1.05 + 1.0;
  const double rp = f.support_radius_p();
  const Vec3 samples[3] = {{0, 0, 0}, {0.25 * rp, 0, 0}, {0.1 * rp, 0.2 * rp, 0.1 * rp}};
  double fit = 0.0;
  for (int j = 1; j <= j_max; ++j) {
    for (int ip = 0; ip < 3; ++ip) {
      auto [l2, l1] = filtered_norms(f, t, samples[ip], j, grid_n, half, bank, threads);
      double bound = std::exp2(1.5 * j) * l1;
      if (rep != nullptr)
        rep->add_case({{"j", double(j)}, {"p_sample", double(ip)}, {"t", t}}, l2, bound,
                      l1 < 1e-250 ? "below floor" : "");
      if (l1 >= 1e-250) fit = std::max(fit, l2 / bound);
    }
  }
  return fit;
}

}  // namespace

EstimateReport check_bernstein(const PhaseDensity& f, double t, int j_max, int grid_n,
                               bool stability, int threads) {
  if (grid_n % 4 != 0) throw std::invalid_argument("check_bernstein: grid_n must be 4-divisible");
  DyadicFilterBank bank;
  EstimateReport rep;
  rep.name = "bernstein";
  rep.tolerances["stability_rel"] = 0.05;
  double fit = bernstein_fit(f, t, j_max, grid_n, bank, threads, &rep);
  rep.finalize_fit();
  rep.pass = std::isfinite(fit);
  if (stability) {
    // doubling step: the reported grid is the doubled refinement of grid_n/2
    double fit_half = bernstein_fit(f, t, j_max, grid_n / 2, bank, threads, nullptr);
    double rel = std::abs(fit - fit_half) / std::max(fit, 1e-300);
    rep.add_case({{"grid_n", double(grid_n / 2)}, {"t", t}}, fit_half, fit,
                 "pre-doubling grid");
    rep.pass = rep.pass && rel < 0.05;
    rep.fitted_constant = fit;
  }
  return rep;
}

EstimateReport check_lemma21(const PhaseDensity& f, const DyadicFilterBank& bank,
                             const SpectralRules& rules, double t, int j_lo, int j_hi,
                             int shell_nodes, bool stability, int threads) {
  if (j_lo < 1 || j_hi < j_lo) throw std::invalid_argument("check_lemma21: bad shell range");
  EstimateReport rep;
  rep.name = "block_norms";
  rep.tolerances["stability_rel"] = 0.10;

  auto sweep_fit = [&](const SpectralRules& rl, int nodes, EstimateReport* out) {
    double fit = 0.0;
    for (int j = j_lo; j <= j_hi; ++j) {
      XiShellGrid grid = make_xi_shell(j, nodes);
      auto norms = block_norm_sweep(j, t, f, bank, rl, grid, threads);
      for (const auto& bn : norms) {
        if (out != nullptr)
          out->add_case({{"t", t},
                         {"j", double(bn.index.j)},
                         {"k", double(bn.index.k)},
                         {"m", double(bn.index.m)},
                         {"n", double(bn.index.n)}},
                        bn.measured, bn.bound, block_bound_branch(bn.index));
        fit = std::max(fit, bn.measured / bn.bound);
      }
    }
    return fit;
  };

  double fit = sweep_fit(rules, shell_nodes, &rep);
  rep.finalize_fit();
  rep.pass = std::isfinite(fit);
  if (stability) {
    // doubling step: the reported resolutions are the doubled refinement of half
    double fit_half = sweep_fit(rules.scaled(0.5), std::max(4, shell_nodes / 2), nullptr);
    double rel = std::abs(fit - fit_half) / std::max(fit, 1e-300);
    rep.add_case({{"t", t}, {"resolution_scale", 0.5}}, fit_half, fit, "pre-doubling sweep");
    rep.pass = rep.pass && rel < 0.10;
    rep.fitted_constant = fit;
  }
  return rep;
}

double summed_block_bound(int j, double t) {
  if (j < 1) throw std::invalid_argument("summed_block_bound: j < 1");
  const int k_cut = 80;
  const int n_cut = 80;
  const int m_cut = static_cast<int>(std::ceil(0.8 * j)) + 60;
  long double total = 0.0;
  for (int k = 0; k < k_cut; ++k) {
    long double mk = 0.0;
    for (int m = 0; m < m_cut; ++m) {
      const double m_branch = std::exp2(-2.0 * m + 1.5 * j);
      for (int n = 0; n < n_cut; ++n) {
        const double n_branch = (std::sqrt(double(n)) + std::sqrt(double(j))) * std::exp2(-n);
        const double first = std::min(1.0, std::exp2(0.5 * (k + m + n - j)) / std::sqrt(t));
        mk += first * std::min(m_branch, n_branch);
      }
    }
    total += std::exp2(-k) * mk;
  }
  return static_cast<double>(t * total);
}

EstimateReport check_lemma22(const PhaseDensity& f, const DyadicFilterBank& bank,
                             const SpectralRules& rules, double t, int j_max, int shell_nodes,
                             int threads) {
  if (j_max < 3) throw std::invalid_argument("check_lemma22: j_max < 3");
  EstimateReport rep;
  rep.name = "shell_decay";
  const double envelope_t = t + std::sqrt(t);

  // measured shell norms against the decaying envelope
  std::vector<double> norms(static_cast<std::size_t>(j_max) + 1, 0.0);
  parallel_for(static_cast<std::size_t>(j_max), threads, [&](std::size_t idx) {
    int j = static_cast<int>(idx) + 1;
    XiShellGrid grid = make_xi_shell(j, shell_nodes);
    norms[idx + 1] = uj_l2_norm(j, t, f, bank, rules, grid);
  });
  for (int j = 1; j <= j_max; ++j) {
    double bound = envelope_t * std::exp2(-j / 11.0);
    rep.add_case({{"t", t}, {"j", double(j)}}, norms[j], bound, "measured shell norm");
  }

  // density-free summation of the block bound: the normalized ratio must have
  // an interior maximum and a decaying tail (slopes 19/200 and 1/10 both beat
  // 1/11, with polynomial factors pushing the turnover near j ~ 30)
  const int j_arith = 120;
  std::vector<double> ratio(static_cast<std::size_t>(j_arith) + 1, 0.0);
  parallel_for(static_cast<std::size_t>(j_arith), threads, [&](std::size_t idx) {
    int j = static_cast<int>(idx) + 1;
    ratio[idx + 1] = summed_block_bound(j, t) * std::exp2(j / 11.0) / envelope_t;
  });
  int arg_max = 1;
  for (int j = 1; j <= j_arith; ++j)
    if (ratio[j] > ratio[arg_max]) arg_max = j;
  bool tail_decays = true;
  for (int j = 81; j <= j_arith; ++j) tail_decays = tail_decays && ratio[j] < ratio[j - 1];
  for (int j = 1; j <= 30; ++j) {
    double bound = envelope_t * std::exp2(-j / 11.0);
    rep.add_case({{"t", t}, {"j", double(j)}, {"summed", 1.0}}, summed_block_bound(j, t),
                 bound, "summed block bound");
  }
  rep.add_case({{"t", t}}, double(arg_max), 60.0, "turnover shell of normalized bound sum");
  rep.add_case({{"t", t}}, ratio[j_arith], 0.6 * ratio[arg_max], "endpoint of normalized tail");

  // geometric series entering the constant: sum_k 2^{-k/2}
  double geo = 0.0;
  for (int k = 0; k <= 200; ++k) geo += std::exp2(-0.5 * k);
  rep.add_case({{"terms", 201.0}}, geo, 1.0 / (1.0 - std::exp2(-0.5)), "sum_k 2^{-k/2}");

  rep.finalize_fit();
  // fitted constant of interest: the measured-norm part only
  double fit = 0.0;
  for (int j = 1; j <= j_max; ++j)
    fit = std::max(fit, norms[j] / (envelope_t * std::exp2(-j / 11.0)));
  rep.fitted_constant = fit;
  rep.pass = std::isfinite(fit) && arg_max <= 60 && tail_decays &&
             ratio[j_arith] < 0.6 * ratio[arg_max] &&
             std::abs(geo - 1.0 / (1.0 - std::exp2(-0.5))) < 1e-12;
  return rep;
}

EstimateReport check_exponents() {
  EstimateReport rep;
  rep.name = "exponent_ledger";
  rep.tolerances["exact"] = 0.0;
  const rat alpha(16, 15), eps(1, 20);
  bool ok = true;

  auto record = [&](const char* note, const rat& got, const rat& want) {
    rep.add_case({}, boost::rational_cast<double>(got), boost::rational_cast<double>(want), note);
    ok = ok && got == want;
  };

  record("(1-eps)(alpha-1)(3/2) = 19/200", (rat(1) - eps) * (alpha - rat(1)) * rat(3, 2),
         rat(19, 200));
  record("(1/2)(1-3alpha/4) = 1/10", rat(1, 2) * (rat(1) - rat(3, 4) * alpha), rat(1, 10));
  record("3 delta / (2(2+delta)) = 1/12 for delta = 2/17",
         rat(3) * rat(2, 17) / (rat(2) * (rat(2) + rat(2, 17))), rat(1, 12));

  const bool slopes_beat = rat(19, 200) > rat(1, 11) && rat(1, 10) > rat(1, 11);
  rep.add_case({}, slopes_beat ? 1.0 : 0.0, 1.0, "min(19/200, 1/10) > 1/11");
  ok = ok && slopes_beat;

  const bool s_ok = rat(1, 12) < rat(1, 11);
  rep.add_case({}, s_ok ? 1.0 : 0.0, 1.0, "s = 1/12 < 1/11");
  ok = ok && s_ok;

  rep.finalize_fit();
  rep.pass = ok;
  return rep;
}

EstimateReport check_theorem(const PhaseDensity& f, const DyadicFilterBank& bank,
                             const SpectralRules& rules, const ConeRule& cone,
                             const std::vector<double>& t_list, bool time_frozen, int threads) {
  if (t_list.empty()) throw std::invalid_argument("check_theorem: empty time list");
  if (!f.isotropic())
    throw std::invalid_argument("check_theorem: needs an isotropic density (profile norms)");
  EstimateReport rep;
  rep.name = "endgame_norms";
  rep.tolerances["lq_domination_rel"] = 1e-3;
  rep.tolerances["pointwise_rel"] = 1e-9;

  const double q = 2.0 + ExponentLedger::delta;
  const double s = ExponentLedger::sobolev_s;
  const double sqrt2 = std::sqrt(2.0);
  const Vec3 x0 = f.center_x();

  bool ok = true;
  std::vector<double> c_profile;
  double emb_fit = 0.0;
  for (double t : t_list) {
    // radial profiles of u and |E_T| on a Gauss grid over [0, R + t]
    const double R = f.support_radius_x(t) + t;
    const int nr = 32;
    Quad1D rq = gauss_legendre(nr, 0.0, R);
    std::vector<double> uvals(nr), evals(nr);
    parallel_for(static_cast<std::size_t>(nr), threads, [&](std::size_t i) {
      Vec3 x = x0 + Vec3{0.0, 0.0, rq.x[i]};
      uvals[i] = majorant_u(t, x, f, cone);
      evals[i] = norm(field_E_T(t, x, f, cone));
    });
    long double uq = 0.0, eq = 0.0;
    for (int i = 0; i < nr; ++i) {
      uq += rq.w[i] * rq.x[i] * rq.x[i] * std::pow(uvals[i], q);
      eq += rq.w[i] * rq.x[i] * rq.x[i] * std::pow(evals[i], q);
    }
    const double u_lq = std::pow(4.0 * kPi * static_cast<double>(uq), 1.0 / q);
    const double e_lq = std::pow(4.0 * kPi * static_cast<double>(eq), 1.0 / q);
    rep.add_case({{"t", t}, {"q", q}}, e_lq, sqrt2 * u_lq, "||E_T||_q vs sqrt(2)||u||_q");
    ok = ok && e_lq <= sqrt2 * u_lq * (1.0 + 1e-3);

    // pointwise domination on the same radial nodes plus a coarse box
    for (int i = 0; i < nr; ++i)
      ok = ok && evals[i] <= sqrt2 * uvals[i] * (1.0 + 1e-9) + 1e-300;
    const double step = 0.35 * R;
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b) {
        Vec3 x = x0 + Vec3{a * step, b * step, 0.4 * step};
        double uu = majorant_u(t, x, f, cone, threads);
        double ee = norm(field_E_T(t, x, f, cone, threads));
        ok = ok && ee <= sqrt2 * uu * (1.0 + 1e-9) + 1e-300;
      }

    // spectral-side norms
    CubeSpec cube = choose_cube(f, t, 64);
    SobolevLq norms = sobolev_lq_norms(t, f, s, q, bank, rules, cube, 12, 24, threads);
    rep.add_case({{"t", t}, {"s", s}}, norms.hs_norm, 1.0, "||u||_{H^s} (finite)");
    rep.add_case({{"t", t}, {"q", q}}, norms.lq_norm, norms.hs_norm,
                 "||u||_q vs ||u||_{H^s}: measured embedding ratio");
    ok = ok && std::isfinite(norms.hs_norm) && std::isfinite(norms.lq_norm);
    if (norms.hs_norm > 0.0) emb_fit = std::max(emb_fit, norms.lq_norm / norms.hs_norm);

    c_profile.push_back(e_lq);
    rep.add_case({{"t", t}, {"q", q}}, e_lq, 1.0, "C(t) profile value");
  }

  if (time_frozen) {
    for (std::size_t i = 1; i < c_profile.size(); ++i)
      ok = ok && c_profile[i] >= c_profile[i - 1] * (1.0 - 1e-9);
  }

  rep.finalize_fit();
  rep.fitted_constant = emb_fit;
  rep.pass = ok;
  return rep;
}

}  // namespace vmf
