#include "vmf/fieldrep.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "vmf/gauss.hpp"
#include "vmf/kinematics.hpp"
#include "vmf/parallel.hpp"

namespace vmf {

namespace {

constexpr double kPi = 3.14159265358979323846;

enum class FieldKind { majorant, e_t, b_t, e_s };

struct ConeResult {
  double scalar = 0.0;
  Vec3 vec{};
};

// One retarded-time slice: integrate over the sphere and momentum space.
// The momentum grid is aligned with each sphere direction so the polar cosine
// equals v.w/|v|.
ConeResult cone_slice(FieldKind kind, double t, const Vec3& x, double s, const PhaseDensity& f,
                      const SphereRule& sphere, const MomentumSphericalRule& prule,
                      const FieldAtTime* E, const FieldAtTime* B) {
  const double t_ret = t - s;
  const Quad1D rq = gauss_legendre(prule.n_radial, 0.0, prule.radius);
  const Quad1D& mq = gauss_legendre(prule.n_polar);
  const bool radial_f = f.momentum_radial();
  const int n_phi = radial_f && kind == FieldKind::majorant ? 1 : prule.n_azimuth;
  const double w_phi = 2.0 * kPi / n_phi;

  ConeResult out;
  for (const auto& node : sphere.nodes) {
    const Vec3& w = node.omega;
    Vec3 e1, e2;
    orthonormal_frame(w, e1, e2);
    const Vec3 X = x + s * w;

    Vec3 lorentz_E{}, lorentz_B{};
    if (kind == FieldKind::e_s) {
      lorentz_E = (*E)(t_ret, X);
      lorentz_B = (*B)(t_ret, X);
    }

    double acc_s = 0.0;
    Vec3 acc_v{};
    for (std::size_t ir = 0; ir < rq.size(); ++ir) {
      const double r = rq.x[ir];
      const double gamma2 = 1.0 + r * r;
      const double a = r / std::sqrt(gamma2);
      const double wr = rq.w[ir] * r * r;
      // radial densities are constant on momentum spheres: evaluate once
      const double f_radial = radial_f ? f.evaluate(t_ret, X, w * r) : 0.0;
      if (radial_f && f_radial == 0.0) continue;

      for (std::size_t im = 0; im < mq.size(); ++im) {
        const double mu = mq.x[im];
        const double smu = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        const double d = 1.0 + a * mu;  // 1 + v.w
        const double wrm = wr * mq.w[im];

        for (int ip = 0; ip < n_phi; ++ip) {
          const double phi = w_phi * ip;
          const Vec3 pdir = mu * w + smu * (std::cos(phi) * e1 + std::sin(phi) * e2);
          const double fv = radial_f ? f_radial : f.evaluate(t_ret, X, pdir * r);
          if (fv == 0.0) continue;
          const double wt = wrm * w_phi * fv;
          const Vec3 v = pdir * a;

          switch (kind) {
            case FieldKind::majorant:
              acc_s += wt / (gamma2 * d * std::sqrt(d));
              break;
            case FieldKind::e_t:
              acc_v += (v + w) * (wt / (gamma2 * d * d));
              break;
            case FieldKind::b_t:
              acc_v += cross(v, w) * (-wt / (gamma2 * d * d));
              break;
            case FieldKind::e_s: {
              const Vec3 L = lorentz_E + cross(v, lorentz_B);
              const double vw = a * mu;
              // K_{E,S} L = (1+p^2)^{-1/2}(1+v.w)^{-2} [ (1+v.w) L
              //             + (v.L)((v.w)w - v) - (w.L)(v+w) ]
              const Vec3 KL = d * L + dot(v, L) * (vw * w - v) - dot(w, L) * (v + w);
              acc_v += KL * (wt / (std::sqrt(gamma2) * d * d));
              break;
            }
          }
        }
      }
    }
    out.scalar += node.weight * acc_s;
    out.vec += node.weight * acc_v;
  }
  return out;
}

ConeResult cone_integral(FieldKind kind, double t, const Vec3& x, const PhaseDensity& f,
                         const ConeRule& rule, const FieldAtTime* E, const FieldAtTime* B,
                         int threads) {
  if (t < 0.0) throw std::domain_error("cone integral: t < 0");
  if (t == 0.0) return {};
  const Quad1D sq = gauss_legendre(rule.s_nodes, 0.0, t);
  const SphereRule sphere = sphere_rule(rule.sphere_degree);

  std::vector<double> part_s(sq.size(), 0.0);
  std::vector<Vec3> part_v(sq.size());
  parallel_for(sq.size(), threads, [&](std::size_t i) {
    ConeResult slice = cone_slice(kind, t, x, sq.x[i], f, sphere, rule.momentum, E, B);
    const double ws = sq.w[i] * (kind == FieldKind::e_s ? sq.x[i] : 1.0);  // dy/|y| keeps one s
    part_s[i] = ws * slice.scalar;
    part_v[i] = ws * slice.vec;
  });
  ConeResult out;
  out.scalar = pairwise_sum(part_s);
  out.vec = pairwise_sum(part_v);
  return out;
}

}  // namespace

double majorant_u(double t, const Vec3& x, const PhaseDensity& f, const ConeRule& rule,
                  int threads) {
  return cone_integral(FieldKind::majorant, t, x, f, rule, nullptr, nullptr, threads).scalar;
}

Vec3 field_E_T(double t, const Vec3& x, const PhaseDensity& f, const ConeRule& rule,
               int threads) {
  return -1.0 * cone_integral(FieldKind::e_t, t, x, f, rule, nullptr, nullptr, threads).vec;
}

Vec3 field_B_T(double t, const Vec3& x, const PhaseDensity& f, const ConeRule& rule,
               int threads) {
  return cone_integral(FieldKind::b_t, t, x, f, rule, nullptr, nullptr, threads).vec;
}

Vec3 field_E_S(double t, const Vec3& x, const PhaseDensity& f, const FieldAtTime& E,
               const FieldAtTime& B, const ConeRule& rule, int threads) {
  return -1.0 * cone_integral(FieldKind::e_s, t, x, f, rule, &E, &B, threads).vec;
}

DataTerms field_data_terms(double t, const Vec3& x, const FieldAtZero& E0, const FieldAtZero& B0,
                           const FieldAtZero& E1, const FieldAtZero& B1, const PhaseDensity* f0,
                           const ConeRule& rule, double dt_factor) {
  if (t <= 0.0) throw std::domain_error("field_data_terms: need t > 0");
  const SphereRule sphere = sphere_rule(rule.sphere_degree);

  auto sphere_avg = [&](const FieldAtZero& g, double radius) {
    Vec3 acc{};
    for (const auto& node : sphere.nodes) acc += node.weight * g(x + radius * node.omega);
    return acc / (4.0 * kPi);
  };

  DataTerms out;
  const double h = dt_factor * std::max(t, 1.0);
  out.E_D = ((t + h) * sphere_avg(E0, t + h) - (t - h) * sphere_avg(E0, t - h)) / (2.0 * h) +
            t * sphere_avg(E1, t);
  out.B_D = ((t + h) * sphere_avg(B0, t + h) - (t - h) * sphere_avg(B0, t - h)) / (2.0 * h) +
            t * sphere_avg(B1, t);

  if (f0 != nullptr) {
    // surface element dsigma = t^2 dS(omega); the prefactor 1/t leaves t
    const Quad1D rq = gauss_legendre(rule.momentum.n_radial, 0.0, rule.momentum.radius);
    const Quad1D& mq = gauss_legendre(rule.momentum.n_polar);
    const int n_phi = rule.momentum.n_azimuth;
    const double w_phi = 2.0 * kPi / n_phi;
    Vec3 acc_e{}, acc_b{};
    for (const auto& node : sphere.nodes) {
      const Vec3& w = node.omega;
      Vec3 e1, e2;
      orthonormal_frame(w, e1, e2);
      const Vec3 X = x + t * w;
      Vec3 se{}, sb{};
      for (std::size_t ir = 0; ir < rq.size(); ++ir) {
        const double r = rq.x[ir];
        const double a = r / std::sqrt(1.0 + r * r);
        const double wr = rq.w[ir] * r * r;
        for (std::size_t im = 0; im < mq.size(); ++im) {
          const double mu = mq.x[im];
          const double smu = std::sqrt(std::max(0.0, 1.0 - mu * mu));
          const double d = 1.0 + a * mu;
          for (int ip = 0; ip < n_phi; ++ip) {
            const double phi = w_phi * ip;
            const Vec3 pdir = mu * w + smu * (std::cos(phi) * e1 + std::sin(phi) * e2);
            const double fv = f0->evaluate(0.0, X, pdir * r);
            if (fv == 0.0) continue;
            const double wt = wr * mq.w[im] * w_phi * fv;
            const Vec3 v = pdir * a;
            se += (w - (a * mu) * v) * (wt / d);
            sb += cross(v, w) * (-wt / d);
          }
        }
      }
      acc_e += node.weight * se;
      acc_b += node.weight * sb;
    }
    out.E_DT = -t * acc_e;
    out.B_DT = t * acc_b;  // representation carries +1/t and K_{B,DT} has the sign inside
  }
  return out;
}

}  // namespace vmf
