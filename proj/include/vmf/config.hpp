#pragma once

#include <string>
#include <vector>

#include "vmf/density.hpp"
#include "vmf/fieldrep.hpp"
#include "vmf/spectral.hpp"

namespace vmf {

// Versioned, fail-closed run configuration. Unknown keys are rejected; the
// canonical serialization (all keys, sorted, round-trip number formatting)
// hashes into the provenance stamp carried by every report.
struct RunConfig {
  int schema_version = 1;
  std::uint64_t seed = 20240801;
  int threads = 0;  // 0 = all hardware threads

  std::string density_kind = "gaussian";  // gaussian | compact_bump | free_streaming | grid
  std::string density_base = "gaussian";  // base of free_streaming
  double density_amplitude = 1.0;
  double density_width_x = 1.0;
  double density_width_p = 1.0;
  Vec3 density_center{};
  std::string density_manifest;  // kind = grid

  std::vector<double> times{0.5, 1.0, 2.0};

  int cone_s_nodes = 48;
  int cone_sphere_degree = 35;
  int cone_p_radial = 32;
  int cone_p_polar = 32;
  int cone_p_azimuth = 8;

  SpectralRules spectral{};

  int j_max = 8;
  int lemma22_j_max = 10;
  int shell_nodes = 32;
  int fft_n = 64;
  int profile_nodes = 400;
  int bernstein_grid = 128;
  long long kernel_samples = 1000000;
  bool stability = true;

  static RunConfig from_file(const std::string& path);
  static RunConfig from_text(const std::string& text);

  std::string canonical() const;
  std::string hash() const;  // 16 hex digits (FNV-1a over the canonical text)

  int effective_threads() const;
  DensityPtr build_density() const;
  ConeRule cone_rule(const PhaseDensity& f) const;
};

}  // namespace vmf
