#include "vmf/density.hpp"

#include <cmath>
#include <stdexcept>

#include <fftw3.h>

#include "vmf/kinematics.hpp"
#include "vmf/parallel.hpp"
#include "vmf/smooth.hpp"
#include "vmf/spline.hpp"

namespace vmf {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

std::complex<double> cis(double phi) { return {std::cos(phi), std::sin(phi)}; }
}  // namespace

std::complex<double> PhaseDensity::fourier_x(double, const Vec3&, const Vec3&) const {
  throw std::invalid_argument("PhaseDensity: no spatial Fourier transform available");
}

// ---------------------------------------------------------------------------
// gaussian

namespace {

class GaussianDensity final : public PhaseDensity {
 public:
  explicit GaussianDensity(const GaussianParams& gp) : p_(gp) {
    if (gp.amplitude <= 0 || gp.width_x <= 0 || gp.width_p <= 0)
      throw std::invalid_argument("gaussian density: nonpositive parameter");
    fx_norm_ = p_.amplitude * std::pow(kTwoPi * p_.width_x * p_.width_x, 1.5);
  }

  double evaluate(double, const Vec3& x, const Vec3& p) const override {
    double rx2 = norm2(x - p_.center), rp2 = norm2(p);
    return p_.amplitude * std::exp(-0.5 * rx2 / (p_.width_x * p_.width_x)) *
           std::exp(-0.5 * rp2 / (p_.width_p * p_.width_p));
  }

  bool has_fourier() const override { return true; }
  std::complex<double> fourier_x(double, const Vec3& xi, const Vec3& p) const override {
    double a = p_.width_x;
    return fx_norm_ * cis(-dot(xi, p_.center)) * std::exp(-0.5 * a * a * norm2(xi)) *
           std::exp(-0.5 * norm2(p) / (p_.width_p * p_.width_p));
  }

  double sup_bound() const override { return p_.amplitude; }
  double support_radius_x(double) const override { return 8.0 * p_.width_x; }
  double support_radius_p() const override { return 8.0 * p_.width_p; }
  Vec3 center_x() const override { return p_.center; }

  std::optional<SeparableFourier> separable_fourier() const override {
    SeparableFourier s;
    s.center = p_.center;
    double a = p_.width_x, amp = fx_norm_;
    double b = p_.width_p;
    s.radial_x = [a, amp](double rho) { return amp * std::exp(-0.5 * a * a * rho * rho); };
    s.radial_p = [b](double r) { return std::exp(-0.5 * r * r / (b * b)); };
    return s;
  }
  bool momentum_radial() const override { return true; }
  bool isotropic() const override { return true; }

 private:
  GaussianParams p_;
  double fx_norm_;
};

// ---------------------------------------------------------------------------
// compact bump

double radial_bump(double u) {
  // 1 on [0, 1/2], 0 at u >= 1
  return smooth_step(2.0 * (1.0 - u));
}

class BumpDensity final : public PhaseDensity {
 public:
  explicit BumpDensity(const BumpParams& bp) : p_(bp) {
    if (bp.amplitude <= 0 || bp.radius_x <= 0 || bp.radius_p <= 0)
      throw std::invalid_argument("compact bump density: nonpositive parameter");
    build_fourier_table();
  }

  double evaluate(double, const Vec3& x, const Vec3& p) const override {
    double rx = norm(x - p_.center), rp = norm(p);
    if (rx >= p_.radius_x || rp >= p_.radius_p) return 0.0;
    return p_.amplitude * radial_bump(rx / p_.radius_x) * radial_bump(rp / p_.radius_p);
  }

  bool has_fourier() const override { return true; }
  std::complex<double> fourier_x(double, const Vec3& xi, const Vec3& p) const override {
    double rp = norm(p);
    double wp = rp >= p_.radius_p ? 0.0 : radial_bump(rp / p_.radius_p);
    return cis(-dot(xi, p_.center)) * table_(norm(xi)) * wp;
  }

  double sup_bound() const override { return p_.amplitude; }
  double support_radius_x(double) const override { return p_.radius_x; }
  double support_radius_p() const override { return p_.radius_p; }
  Vec3 center_x() const override { return p_.center; }

  std::optional<SeparableFourier> separable_fourier() const override {
    SeparableFourier s;
    s.center = p_.center;
    const UniformSpline* tab = &table_;
    double rp_max = p_.radius_p;
    s.radial_x = [tab](double rho) { return (*tab)(rho); };
    s.radial_p = [rp_max](double r) {
      return r >= rp_max ? 0.0 : radial_bump(r / rp_max);
    };
    return s;
  }
  bool momentum_radial() const override { return true; }
  bool isotropic() const override { return true; }

 private:
  void build_fourier_table() {
    // Fx(rho) = A 4pi/rho int_0^R g(r/R) r sin(rho r) dr via a padded type-I DST.
    // Padding factor chosen so the frequency step resolves the spline to ~1e-7.
    const double R = p_.radius_x;
    const int logM = 20;
    const int M = 1 << logM;  // padded sample count
    const double L = 64.0 * R;
    const double dr = L / M;
    std::vector<double> in(M - 1, 0.0), out(M - 1, 0.0);
    for (int n = 1; n < M; ++n) {
      double r = n * dr;
      if (r >= R) break;
      in[n - 1] = radial_bump(r / R) * r;
    }
    fftw_plan plan = fftw_plan_r2r_1d(M - 1, in.data(), out.data(), FFTW_RODFT00, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    // RODFT00: out[k-1] = 2 sum_n in[n-1] sin(pi k n / M);  rho_k = pi k / L
    const double drho = kPi / L;
    int n_keep = std::min<int>(M - 2, static_cast<int>(p_.fourier_table_max / drho) + 2);
    std::vector<double> vals(n_keep + 1);
    double amp = p_.amplitude;
    // rho -> 0 limit: 4pi int g r^2 dr by the same sampling
    double v0 = 0.0;
    for (int n = 1; n < M; ++n) {
      double r = n * dr;
      if (r >= R) break;
      v0 += radial_bump(r / R) * r * r * dr;
    }
    vals[0] = amp * 4.0 * kPi * v0;
    for (int k = 1; k <= n_keep; ++k) {
      double integral = 0.5 * out[k - 1] * dr;
      vals[k] = amp * 4.0 * kPi * integral / (k * drho);
    }
    table_ = UniformSpline(0.0, drho, std::move(vals));
  }

  BumpParams p_;
  UniformSpline table_;
};

// ---------------------------------------------------------------------------
// free streaming

class FreeStreamingDensity final : public PhaseDensity {
 public:
  explicit FreeStreamingDensity(DensityPtr base) : base_(std::move(base)) {
    if (!base_) throw std::invalid_argument("free streaming: null base density");
  }

  double evaluate(double t, const Vec3& x, const Vec3& p) const override {
    Vec3 v = velocity_of(Momentum{p}).v;
    return base_->evaluate(0.0, x - v * t, p);
  }

  bool has_fourier() const override { return base_->has_fourier(); }
  std::complex<double> fourier_x(double t, const Vec3& xi, const Vec3& p) const override {
    Vec3 v = velocity_of(Momentum{p}).v;
    return cis(-t * dot(xi, v)) * base_->fourier_x(0.0, xi, p);
  }

  double sup_bound() const override { return base_->sup_bound(); }
  double support_radius_x(double t) const override {
    return base_->support_radius_x(0.0) + std::abs(t);
  }
  double support_radius_p() const override { return base_->support_radius_p(); }
  Vec3 center_x() const override { return base_->center_x(); }

  std::optional<SeparableFourier> separable_fourier() const override {
    auto s = base_->separable_fourier();
    if (!s || s->free_streaming) return std::nullopt;
    s->free_streaming = true;
    return s;
  }
  bool momentum_radial() const override { return false; }
  bool isotropic() const override { return base_->isotropic(); }

 private:
  DensityPtr base_;
};

// ---------------------------------------------------------------------------
// linear combination

class CombinationDensity final : public PhaseDensity {
 public:
  explicit CombinationDensity(std::vector<std::pair<double, DensityPtr>> terms)
      : terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("combination: empty");
    for (const auto& [c, f] : terms_) {
      if (c < 0.0) throw std::invalid_argument("combination: negative coefficient");
      if (!f) throw std::invalid_argument("combination: null density");
    }
  }

  double evaluate(double t, const Vec3& x, const Vec3& p) const override {
    double s = 0.0;
    for (const auto& [c, f] : terms_) s += c * f->evaluate(t, x, p);
    return s;
  }

  bool has_fourier() const override {
    for (const auto& [c, f] : terms_)
      if (!f->has_fourier()) return false;
    return true;
  }
  std::complex<double> fourier_x(double t, const Vec3& xi, const Vec3& p) const override {
    std::complex<double> s = 0.0;
    for (const auto& [c, f] : terms_) s += c * f->fourier_x(t, xi, p);
    return s;
  }

  double sup_bound() const override {
    double s = 0.0;
    for (const auto& [c, f] : terms_) s += c * f->sup_bound();
    return s;
  }
  double support_radius_x(double t) const override {
    double r = 0.0;
    for (const auto& [c, f] : terms_)
      r = std::max(r, norm(f->center_x() - center_x()) + f->support_radius_x(t));
    return r;
  }
  double support_radius_p() const override {
    double r = 0.0;
    for (const auto& [c, f] : terms_) r = std::max(r, f->support_radius_p());
    return r;
  }
  Vec3 center_x() const override { return terms_.front().second->center_x(); }

 private:
  std::vector<std::pair<double, DensityPtr>> terms_;
};

}  // namespace

DensityPtr make_gaussian(const GaussianParams& params) {
  return std::make_shared<GaussianDensity>(params);
}

DensityPtr make_compact_bump(const BumpParams& params) {
  return std::make_shared<BumpDensity>(params);
}

DensityPtr make_free_streaming(DensityPtr base) {
  return std::make_shared<FreeStreamingDensity>(std::move(base));
}

DensityPtr make_linear_combination(std::vector<std::pair<double, DensityPtr>> terms) {
  return std::make_shared<CombinationDensity>(std::move(terms));
}

// ---------------------------------------------------------------------------
// moments and conserved functionals

MomentumGrid MomentumGrid::make(int nodes_per_axis, double radius) {
  if (nodes_per_axis < 1 || radius <= 0) throw std::invalid_argument("MomentumGrid: bad shape");
  return {gauss_legendre(nodes_per_axis, -radius, radius), radius};
}

SpatialGrid SpatialGrid::make(int nodes_per_axis, double radius, const Vec3& center) {
  if (nodes_per_axis < 1 || radius <= 0) throw std::invalid_argument("SpatialGrid: bad shape");
  return {gauss_legendre(nodes_per_axis, -radius, radius), radius, center};
}

Moments moments(const PhaseDensity& f, double t, const Vec3& x, const MomentumGrid& p_rule) {
  if (p_rule.radius < f.support_radius_p())
    throw std::invalid_argument("moments: momentum grid does not cover the density support");
  Moments m;
  const auto& q = p_rule.axis;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j)
      for (std::size_t k = 0; k < q.size(); ++k) {
        Vec3 p{q.x[i], q.x[j], q.x[k]};
        double w = q.w[i] * q.w[j] * q.w[k];
        double val = w * f.evaluate(t, x, p);
        if (val == 0.0) continue;
        m.rho += val;
        m.j += velocity_of(Momentum{p}).v * val;
      }
  return m;
}

namespace {

double phase_space_integral(const PhaseDensity& f, double t, const SpatialGrid& x_rule,
                            const MomentumGrid& p_rule, bool energy_weight, int threads) {
  if (p_rule.radius < f.support_radius_p())
    throw std::invalid_argument("phase-space integral: momentum grid too small");
  if (x_rule.radius < f.support_radius_x(t))
    throw std::invalid_argument("phase-space integral: spatial grid too small");
  const auto& qx = x_rule.axis;
  const auto& qp = p_rule.axis;
  const std::size_t nx = qx.size(), np = qp.size();
  std::vector<double> slab(nx * nx, 0.0);
  parallel_for(nx * nx, threads, [&](std::size_t idx) {
    std::size_t i = idx / nx, j = idx % nx;
    double acc = 0.0;
    for (std::size_t k = 0; k < nx; ++k) {
      Vec3 x = x_rule.center + Vec3{qx.x[i], qx.x[j], qx.x[k]};
      double wx = qx.w[i] * qx.w[j] * qx.w[k];
      for (std::size_t a = 0; a < np; ++a)
        for (std::size_t b = 0; b < np; ++b)
          for (std::size_t c = 0; c < np; ++c) {
            Vec3 p{qp.x[a], qp.x[b], qp.x[c]};
            double val = f.evaluate(t, x, p);
            if (val == 0.0) continue;
            double w = wx * qp.w[a] * qp.w[b] * qp.w[c];
            acc += w * val * (energy_weight ? std::sqrt(1.0 + norm2(p)) : 1.0);
          }
    }
    slab[idx] = acc;
  });
  return pairwise_sum(slab);
}

}  // namespace

double kinetic_energy(const PhaseDensity& f, double t, const SpatialGrid& x_rule,
                      const MomentumGrid& p_rule, int threads) {
  return phase_space_integral(f, t, x_rule, p_rule, true, threads);
}

double total_mass(const PhaseDensity& f, double t, const SpatialGrid& x_rule,
                  const MomentumGrid& p_rule, int threads) {
  return phase_space_integral(f, t, x_rule, p_rule, false, threads);
}

}  // namespace vmf
