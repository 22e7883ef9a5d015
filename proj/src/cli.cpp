#include "vmf/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "vmf/estimates.hpp"
#include "vmf/kernels.hpp"
#include "vmf/kinematics.hpp"
#include "vmf/report.hpp"

namespace vmf {

namespace {

namespace fs = std::filesystem;

struct Runner {
  const RunConfig& cfg;
  fs::path out;
  RunResult result;
  DensityPtr density;
  DyadicFilterBank bank;

  explicit Runner(const RunConfig& c, const std::string& out_dir) : cfg(c), out(out_dir) {
    fs::create_directories(out);
    density = c.build_density();
  }

  void emit(EstimateReport rep, const std::string& stem) {
    rep.config_hash = cfg.hash();
    const std::string jpath = (out / (stem + ".json")).string();
    const std::string cpath = (out / (stem + ".csv")).string();
    rep.write_json(jpath);
    rep.write_csv(cpath);
    result.artifacts.push_back(jpath);
    result.artifacts.push_back(cpath);
    result.summary.push_back(std::string(rep.pass ? "pass" : "FAIL") + "  " + stem +
                             "  fitted_constant=" + format_double(rep.fitted_constant));
    if (!rep.pass) result.pass = false;
  }

  void verify_kernels() {
    emit(verify_kernel_bounds(cfg.kernel_samples, cfg.seed, cfg.effective_threads()),
         "kernel_bounds");
  }

  void verify_identity() {
    EstimateReport rep;
    rep.name = "sphere_bessel_identity";
    rep.tolerances["normalized_discrepancy"] = 1e-8;
    const Vec3 xdir = normalized(Vec3{1.0, 2.0, 2.0});
    const Vec3 perp = normalized(cross(xdir, Vec3{0.0, 0.0, 1.0}));
    double worst = 0.0;
    for (int ia = 0; ia < 10; ++ia) {
      double srho = 0.3 * std::pow(100.0 / 0.3, ia / 9.0);
      for (int iv = 0; iv < 10; ++iv) {
        double speeds[10] = {0.0, 0.1, 0.25, 0.4, 0.55, 0.7, 0.8, 0.9, 0.96, 0.99};
        double v = speeds[iv];
        double pmag = v > 0.0 ? v / std::sqrt(1.0 - v * v) : 0.0;
        for (int im = 0; im < 10; ++im) {
          double mu = -1.0 + 2.0 * im / 9.0;
          Vec3 pdir = mu * xdir + std::sqrt(std::max(0.0, 1.0 - mu * mu)) * perp;
          Vec3 p = pdir * pmag;
          Vec3 xi = xdir * srho;  // s = 1
          auto direct = sphere_oscillatory(1.0, xi, p, OscMethod::direct);
          auto reduced = sphere_oscillatory(1.0, xi, p, OscMethod::bessel);
          double disc = std::abs(direct - reduced) / (1.0 + std::abs(direct));
          worst = std::max(worst, disc);
          if (im == 0 || disc == worst)
            rep.add_case({{"s_rho", srho}, {"speed", v}, {"mu", mu}}, disc, 1e-8, "");
        }
      }
    }
    rep.finalize_fit();
    rep.pass = worst <= 1e-8;
    emit(std::move(rep), "identity");
  }

  void fields() {
    const ConeRule rule = cfg.cone_rule(*density);
    const int threads = cfg.effective_threads();
    const Vec3 x0 = density->center_x();
    const std::string cpath = (out / "field_snapshot.csv").string();
    std::ofstream csv(cpath, std::ios::binary);
    csv << "t,x1,x2,x3,component,value\n";
    EstimateReport rep;
    rep.name = "field_snapshot";
    rep.tolerances["domination_rel"] = 1e-9;
    bool ok = true;
    for (double t : cfg.times) {
      if (t <= 0.0) continue;
      const double step = 0.5 * (density->support_radius_x(t) + t) / 2.0;
      for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
          for (int c = -2; c <= 2; ++c) {
            Vec3 x = x0 + Vec3{a * step, b * step, c * step};
            double u = majorant_u(t, x, *density, rule, threads);
            Vec3 et = field_E_T(t, x, *density, rule, threads);
            Vec3 bt = field_B_T(t, x, *density, rule, threads);
            const char* names[7] = {"u", "E_T1", "E_T2", "E_T3", "B_T1", "B_T2", "B_T3"};
            double vals[7] = {u, et.x, et.y, et.z, bt.x, bt.y, bt.z};
            for (int ci = 0; ci < 7; ++ci)
              csv << format_double(t) << "," << format_double(x.x) << "," << format_double(x.y)
                  << "," << format_double(x.z) << "," << names[ci] << ","
                  << format_double(vals[ci]) << "\n";
            ok = ok && norm(et) <= std::sqrt(2.0) * u * (1.0 + 1e-9) + 1e-300;
            rep.add_case({{"t", t}, {"x1", x.x}, {"x2", x.y}, {"x3", x.z}}, norm(et),
                         std::sqrt(2.0) * u, "");
          }
    }
    csv.close();
    result.artifacts.push_back(cpath);
    rep.finalize_fit();
    rep.pass = ok;
    emit(std::move(rep), "fields");
  }

  void decompose() {
    const int threads = cfg.effective_threads();
    EstimateReport rep;
    rep.name = "block_tables";
    const std::string bpath = (out / "blocknorms.csv").string();
    const std::string upath = (out / "uj_norms.csv").string();
    std::ofstream bcsv(bpath, std::ios::binary);
    std::ofstream ucsv(upath, std::ios::binary);
    bcsv << "t,j,k,m,n,measured,bound,ratio\n";
    ucsv << "t,j,norm,log2_norm\n";
    bool ok = true;
    for (double t : cfg.times) {
      if (t <= 0.0) continue;
      for (int j = 1; j <= cfg.j_max; ++j) {
        XiShellGrid grid = make_xi_shell(j, cfg.shell_nodes);
        auto norms = block_norm_sweep(j, t, *density, bank, cfg.spectral, grid, threads);
        // heatmap: max over n of the ratio, k rows x m columns
        std::vector<double> heat(static_cast<std::size_t>(cfg.spectral.k_max + 1) *
                                     (cfg.spectral.m_max + 1),
                                 0.0);
        for (const auto& bn : norms) {
          double ratio = bn.measured / bn.bound;
          ok = ok && std::isfinite(ratio);
          bcsv << format_double(t) << "," << bn.index.j << "," << bn.index.k << ","
               << bn.index.m << "," << bn.index.n << "," << format_double(bn.measured) << ","
               << format_double(bn.bound) << "," << format_double(ratio) << "\n";
          auto& cell = heat[static_cast<std::size_t>(bn.index.k) * (cfg.spectral.m_max + 1) +
                            bn.index.m];
          cell = std::max(cell, ratio);
          rep.add_case({{"t", t},
                        {"j", double(bn.index.j)},
                        {"k", double(bn.index.k)},
                        {"m", double(bn.index.m)},
                        {"n", double(bn.index.n)}},
                       bn.measured, bn.bound, "");
        }
        const std::string hpath =
            (out / ("heatmap_t" + format_double(t) + "_j" + std::to_string(j) + ".csv"))
                .string();
        std::ofstream hcsv(hpath, std::ios::binary);
        for (int k = 0; k <= cfg.spectral.k_max; ++k) {
          for (int m = 0; m <= cfg.spectral.m_max; ++m)
            hcsv << (m ? "," : "")
                 << format_double(heat[static_cast<std::size_t>(k) * (cfg.spectral.m_max + 1) +
                                       m]);
          hcsv << "\n";
        }
        result.artifacts.push_back(hpath);
      }
      for (int j = 0; j <= cfg.lemma22_j_max; ++j) {
        XiShellGrid grid = make_xi_shell(j, cfg.shell_nodes);
        double nj = uj_l2_norm(j, t, *density, bank, cfg.spectral, grid);
        ucsv << format_double(t) << "," << j << "," << format_double(nj) << ","
             << format_double(nj > 0 ? std::log2(nj) : -INFINITY) << "\n";
      }
    }
    result.artifacts.push_back(bpath);
    result.artifacts.push_back(upath);
    rep.finalize_fit();
    rep.pass = ok;
    emit(std::move(rep), "decompose");
  }

  void bounds() {
    const int threads = cfg.effective_threads();
    for (double t : cfg.times) {
      if (t <= 0.0) continue;
      emit(check_bernstein(*density, t, cfg.j_max, cfg.bernstein_grid, cfg.stability, threads),
           "bernstein_t" + format_double(t));
      emit(check_lemma21(*density, bank, cfg.spectral, t, 1, cfg.j_max, cfg.shell_nodes,
                         cfg.stability, threads),
           "block_norms_t" + format_double(t));
      emit(check_lemma22(*density, bank, cfg.spectral, t, cfg.lemma22_j_max, cfg.shell_nodes,
                         threads),
           "shell_decay_t" + format_double(t));
    }
    emit(check_exponents(), "exponents");
  }

  void theorem() {
    std::vector<double> times;
    for (double t : cfg.times)
      if (t > 0.0) times.push_back(t);
    const bool frozen =
        cfg.density_kind == "gaussian" || cfg.density_kind == "compact_bump";
    emit(check_theorem(*density, bank, cfg.spectral, cfg.cone_rule(*density), times, frozen,
                       cfg.effective_threads()),
         "endgame");
  }
};

}  // namespace

RunResult run(const std::string& subcommand, const RunConfig& config,
              const std::string& out_dir) {
  Runner r(config, out_dir);
  r.result.pass = true;
  try {
    if (subcommand == "verify-kernels") {
      r.verify_kernels();
    } else if (subcommand == "verify-identity") {
      r.verify_identity();
    } else if (subcommand == "fields") {
      r.fields();
    } else if (subcommand == "decompose") {
      r.decompose();
    } else if (subcommand == "bounds") {
      r.bounds();
    } else if (subcommand == "theorem") {
      r.theorem();
    } else if (subcommand == "all") {
      r.verify_kernels();
      r.verify_identity();
      r.fields();
      r.decompose();
      r.bounds();
      r.theorem();
    } else {
      throw std::invalid_argument("unknown subcommand: " + subcommand);
    }
  } catch (const std::exception& e) {
    r.result.pass = false;
    r.result.summary.push_back(std::string("ERROR  ") + e.what());
  }
  return r.result;
}

}  // namespace vmf
