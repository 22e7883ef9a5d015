#include "vmf/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vmf/parallel.hpp"
#include "vmf/rng.hpp"

namespace vmf {

double spectral_norm(const Mat3& m) {
  // Jacobi sweeps on S = M^T M; 3x3 converges to machine precision in a few sweeps.
  Mat3 s;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) acc += m(k, r) * m(k, c);
      s(r, c) = acc;
    }
  for (int sweep = 0; sweep < 16; ++sweep) {
    double off = std::abs(s(0, 1)) + std::abs(s(0, 2)) + std::abs(s(1, 2));
    if (off < 1e-18 * (std::abs(s(0, 0)) + std::abs(s(1, 1)) + std::abs(s(2, 2)) + 1e-300)) break;
    for (int p = 0; p < 2; ++p)
      for (int q = p + 1; q < 3; ++q) {
        if (s(p, q) == 0.0) continue;
        double theta = (s(q, q) - s(p, p)) / (2.0 * s(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), sn = t * c;
        for (int k = 0; k < 3; ++k) {
          double skp = s(k, p), skq = s(k, q);
          s(k, p) = c * skp - sn * skq;
          s(k, q) = sn * skp + c * skq;
        }
        for (int k = 0; k < 3; ++k) {
          double spk = s(p, k), sqk = s(q, k);
          s(p, k) = c * spk - sn * sqk;
          s(q, k) = sn * spk + c * sqk;
        }
      }
  }
  double lam = std::max({s(0, 0), s(1, 1), s(2, 2)});
  return std::sqrt(std::max(0.0, lam));
}

KernelValue kernel(KernelKind kind, const UnitVector& omega, const Momentum& p) {
  const Vec3& w = omega.omega;
  const Vec3 v = velocity_of(p).v;
  const double p2 = norm2(p.p);
  const double vw = dot(v, w);
  const double d = 1.0 + vw;

  switch (kind) {
    case KernelKind::E_DT:
      return {kind, (w - vw * v) / d};
    case KernelKind::E_T:
      return {kind, (v + w) * (1.0 / ((1.0 + p2) * d * d))};
    case KernelKind::B_DT:
      return {kind, cross(v, w) * (-1.0 / d)};
    case KernelKind::B_T:
      return {kind, cross(v, w) * (-1.0 / ((1.0 + p2) * d * d))};
    case KernelKind::E_S: {
      Mat3 m = Mat3::identity() * d + outer(vw * w - v, v) - outer(v + w, w);
      return {kind, m * (1.0 / (std::sqrt(1.0 + p2) * d * d))};
    }
  }
  throw std::invalid_argument("kernel: unknown kind");
}

namespace {

struct SupAccum {
  double e_t = 0.0, e_s = 0.0, b_t = 0.0;
  void merge(const SupAccum& o) {
    e_t = std::max(e_t, o.e_t);
    e_s = std::max(e_s, o.e_s);
    b_t = std::max(b_t, o.b_t);
  }
};

}  // namespace

EstimateReport verify_kernel_bounds(std::int64_t sample_count, std::uint64_t rng_seed,
                                    int threads) {
  if (sample_count < 1) throw std::invalid_argument("verify_kernel_bounds: sample_count < 1");
  SampleStream rng(rng_seed);

  const std::int64_t chunk = 65536;
  const std::size_t nchunks = static_cast<std::size_t>((sample_count + chunk - 1) / chunk);
  std::vector<SupAccum> partial(nchunks);

  parallel_for(nchunks, threads, [&](std::size_t ci) {
    SupAccum acc;
    const std::int64_t lo = static_cast<std::int64_t>(ci) * chunk;
    const std::int64_t hi = std::min<std::int64_t>(lo + chunk, sample_count);
    for (std::int64_t i = lo; i < hi; ++i) {
      const auto ctr = static_cast<std::uint64_t>(i);
      double pmag = rng.log_uniform(ctr, 0, 1e-3, 1e3);
      Vec3 pdir = rng.unit_vector(ctr, 1);
      Momentum mom{pdir * pmag};
      Vec3 v = velocity_of(mom).v;

      Vec3 w;
      if (i % 4 == 3) {
        // near-antipodal: omega within 1e-6 radians of -p/|p|
        double ang = 1e-6 * rng.uniform(ctr, 3);
        double az = 6.283185307179586477 * rng.uniform(ctr, 4);
        Vec3 e1, e2;
        orthonormal_frame(pdir, e1, e2);
        w = -(pdir * std::cos(ang) + (e1 * std::cos(az) + e2 * std::sin(az)) * std::sin(ang));
      } else {
        w = rng.unit_vector(ctr, 5);
      }
      UnitVector omega{w};

      const double p2 = pmag * pmag;
      const double d = 1.0 + dot(v, w);
      const double et = norm(kernel(KernelKind::E_T, omega, mom).vec()) * (1.0 + p2) *
                        d * std::sqrt(d);
      const double bt = norm(kernel(KernelKind::B_T, omega, mom).vec()) * (1.0 + p2) *
                        d * std::sqrt(d);
      const double es =
          spectral_norm(kernel(KernelKind::E_S, omega, mom).mat()) * std::sqrt(1.0 + p2) * d;
      acc.e_t = std::max(acc.e_t, et);
      acc.b_t = std::max(acc.b_t, bt);
      acc.e_s = std::max(acc.e_s, es);
    }
    partial[ci] = acc;
  });

  SupAccum sup;
  for (const auto& a : partial) sup.merge(a);

  EstimateReport rep;
  rep.name = "kernel_bounds";
  rep.tolerances["sup_slack"] = 1e-12;
  const double sqrt2 = std::sqrt(2.0);
  rep.add_case({{"samples", double(sample_count)}, {"seed", double(rng_seed)}}, sup.e_t, sqrt2,
               "E_T");
  rep.add_case({{"samples", double(sample_count)}, {"seed", double(rng_seed)}}, sup.e_s, 4.0,
               "E_S operator norm");
  rep.add_case({{"samples", double(sample_count)}, {"seed", double(rng_seed)}}, sup.b_t, sqrt2,
               "B_T");
  rep.finalize_fit();
  rep.pass = sup.e_t <= sqrt2 + 1e-12 && sup.e_s <= 4.0 + 1e-12 && sup.b_t <= sqrt2 + 1e-12;
  return rep;
}

}  // namespace vmf
