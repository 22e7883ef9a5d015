#include "vmf/config.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "vmf/grid_density.hpp"
#include "vmf/kv.hpp"
#include "vmf/parallel.hpp"
#include "vmf/report.hpp"

namespace vmf {

namespace {

struct Field {
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("config field `" + key + "`: not a number: " + v);
  }
}

long long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long long d = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("config field `" + key + "`: not an integer: " + v);
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw std::invalid_argument("config field `" + key + "`: expected true/false");
}

const std::map<std::string, Field>& schema() {
  static const std::map<std::string, Field> s = [] {
    std::map<std::string, Field> m;
    auto add_int = [&m](const char* key, auto member) {
      m[key] = {[member](const RunConfig& c) { return std::to_string(c.*member); },
                [member, key](RunConfig& c, const std::string& v) {
                  c.*member = static_cast<std::decay_t<decltype(c.*member)>>(parse_int(key, v));
                }};
    };
    auto add_double = [&m](const char* key, auto member) {
      m[key] = {[member](const RunConfig& c) { return format_double(c.*member); },
                [member, key](RunConfig& c, const std::string& v) {
                  c.*member = parse_double(key, v);
                }};
    };
    auto add_string = [&m](const char* key, auto member) {
      m[key] = {[member](const RunConfig& c) { return c.*member; },
                [member](RunConfig& c, const std::string& v) { c.*member = v; }};
    };
    auto add_bool = [&m](const char* key, auto member) {
      m[key] = {[member](const RunConfig& c) { return c.*member ? "true" : "false"; },
                [member, key](RunConfig& c, const std::string& v) {
                  c.*member = parse_bool(key, v);
                }};
    };

    add_int("schema_version", &RunConfig::schema_version);
    add_int("threads", &RunConfig::threads);
    m["seed"] = {[](const RunConfig& c) { return std::to_string(c.seed); },
                 [](RunConfig& c, const std::string& v) {
                   c.seed = static_cast<std::uint64_t>(parse_int("seed", v));
                 }};

    add_string("density.kind", &RunConfig::density_kind);
    add_string("density.base", &RunConfig::density_base);
    add_double("density.amplitude", &RunConfig::density_amplitude);
    add_double("density.width_x", &RunConfig::density_width_x);
    add_double("density.width_p", &RunConfig::density_width_p);
    add_string("density.manifest", &RunConfig::density_manifest);
    m["density.center"] = {
        [](const RunConfig& c) {
          return format_double(c.density_center.x) + " " + format_double(c.density_center.y) +
                 " " + format_double(c.density_center.z);
        },
        [](RunConfig& c, const std::string& v) {
          auto parts = split_ws(v);
          if (parts.size() != 3)
            throw std::invalid_argument("config field `density.center`: expected 3 numbers");
          c.density_center = {parse_double("density.center", parts[0]),
                              parse_double("density.center", parts[1]),
                              parse_double("density.center", parts[2])};
        }};
    m["times"] = {
        [](const RunConfig& c) {
          std::string out;
          for (std::size_t i = 0; i < c.times.size(); ++i)
            out += (i ? " " : "") + format_double(c.times[i]);
          return out;
        },
        [](RunConfig& c, const std::string& v) {
          c.times.clear();
          for (const auto& tok : split_ws(v)) c.times.push_back(parse_double("times", tok));
          if (c.times.empty()) throw std::invalid_argument("config field `times`: empty");
        }};

    add_int("cone.s_nodes", &RunConfig::cone_s_nodes);
    add_int("cone.sphere_degree", &RunConfig::cone_sphere_degree);
    add_int("cone.p_radial", &RunConfig::cone_p_radial);
    add_int("cone.p_polar", &RunConfig::cone_p_polar);
    add_int("cone.p_azimuth", &RunConfig::cone_p_azimuth);

    auto add_spec_int = [&m](const char* key, int SpectralRules::* member) {
      m[key] = {[member](const RunConfig& c) { return std::to_string(c.spectral.*member); },
                [member, key](RunConfig& c, const std::string& v) {
                  c.spectral.*member = static_cast<int>(parse_int(key, v));
                }};
    };
    add_spec_int("spectral.p_radial", &SpectralRules::p_radial);
    add_spec_int("spectral.sigma_center", &SpectralRules::sigma_center);
    add_spec_int("spectral.sigma_edge", &SpectralRules::sigma_edge);
    add_spec_int("spectral.mu_center", &SpectralRules::mu_center);
    add_spec_int("spectral.mu_edge", &SpectralRules::mu_edge);
    add_spec_int("spectral.s_base", &SpectralRules::s_base);
    add_spec_int("spectral.node_cap", &SpectralRules::node_cap);
    add_spec_int("spectral.p_azimuth", &SpectralRules::p_azimuth);
    m["spectral.nodes_per_radian"] = {
        [](const RunConfig& c) { return format_double(c.spectral.nodes_per_radian); },
        [](RunConfig& c, const std::string& v) {
          c.spectral.nodes_per_radian = parse_double("spectral.nodes_per_radian", v);
        }};
    m["spectral.resolve_phase_cap"] = {
        [](const RunConfig& c) { return format_double(c.spectral.resolve_phase_cap); },
        [](RunConfig& c, const std::string& v) {
          c.spectral.resolve_phase_cap = parse_double("spectral.resolve_phase_cap", v);
        }};

    add_int("index.j_max", &RunConfig::j_max);
    add_int("index.lemma22_j_max", &RunConfig::lemma22_j_max);
    auto add_idx = [&m](const char* key, int SpectralRules::* member) {
      m[key] = {[member](const RunConfig& c) { return std::to_string(c.spectral.*member); },
                [member, key](RunConfig& c, const std::string& v) {
                  c.spectral.*member = static_cast<int>(parse_int(key, v));
                }};
    };
    add_idx("index.k_max", &SpectralRules::k_max);
    add_idx("index.m_max", &SpectralRules::m_max);
    add_idx("index.n_max", &SpectralRules::n_max);

    add_int("shell_nodes", &RunConfig::shell_nodes);
    add_int("fft_n", &RunConfig::fft_n);
    add_int("profile_nodes", &RunConfig::profile_nodes);
    add_int("bernstein_grid", &RunConfig::bernstein_grid);
    add_int("kernel_samples", &RunConfig::kernel_samples);
    add_bool("stability", &RunConfig::stability);
    return m;
  }();
  return s;
}

void validate(const RunConfig& c) {
  if (c.schema_version != 1)
    throw std::invalid_argument("config field `schema_version`: unsupported version");
  auto positive = [](const char* key, double v) {
    if (!(v > 0)) throw std::invalid_argument(std::string("config field `") + key +
                                              "`: must be positive");
  };
  positive("cone.s_nodes", c.cone_s_nodes);
  positive("cone.sphere_degree", c.cone_sphere_degree);
  positive("cone.p_radial", c.cone_p_radial);
  positive("cone.p_polar", c.cone_p_polar);
  positive("cone.p_azimuth", c.cone_p_azimuth);
  positive("spectral.p_radial", c.spectral.p_radial);
  positive("spectral.sigma_center", c.spectral.sigma_center);
  positive("spectral.mu_center", c.spectral.mu_center);
  positive("spectral.s_base", c.spectral.s_base);
  positive("shell_nodes", c.shell_nodes);
  positive("profile_nodes", c.profile_nodes);
  positive("kernel_samples", static_cast<double>(c.kernel_samples));
  if (c.fft_n % 4 != 0 || c.bernstein_grid % 4 != 0)
    throw std::invalid_argument("config: fft_n and bernstein_grid must be divisible by 4");
  for (double t : c.times)
    if (t < 0) throw std::invalid_argument("config field `times`: negative time");
  if (c.threads < 0) throw std::invalid_argument("config field `threads`: negative");
  if (c.density_kind != "gaussian" && c.density_kind != "compact_bump" &&
      c.density_kind != "free_streaming" && c.density_kind != "grid")
    throw std::invalid_argument("config field `density.kind`: unknown kind " + c.density_kind);
  if (c.density_kind == "free_streaming" && c.density_base != "gaussian" &&
      c.density_base != "compact_bump")
    throw std::invalid_argument("config field `density.base`: unknown base " + c.density_base);
  if (c.density_kind == "grid" && c.density_manifest.empty())
    throw std::invalid_argument("config field `density.manifest`: required for grid densities");
}

}  // namespace

RunConfig RunConfig::from_text(const std::string& text) {
  RunConfig c;
  const auto& s = schema();
  std::map<std::string, bool> seen;
  for (const auto& [k, v] : parse_kv_text(text)) {
    auto it = s.find(k);
    if (it == s.end()) throw std::invalid_argument("config: unknown field `" + k + "`");
    if (seen[k]) throw std::invalid_argument("config: duplicate field `" + k + "`");
    seen[k] = true;
    it->second.set(c, v);
  }
  validate(c);
  return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
  RunConfig c;
  const auto& s = schema();
  std::map<std::string, bool> seen;
  for (const auto& [k, v] : parse_kv_file(path)) {
    auto it = s.find(k);
    if (it == s.end()) throw std::invalid_argument("config: unknown field `" + k + "`");
    if (seen[k]) throw std::invalid_argument("config: duplicate field `" + k + "`");
    seen[k] = true;
    it->second.set(c, v);
  }
  validate(c);
  return c;
}

std::string RunConfig::canonical() const {
  std::ostringstream out;
  for (const auto& [k, f] : schema()) out << k << " = " << f.get(*this) << "\n";
  return out.str();
}

std::string RunConfig::hash() const {
  std::string text = canonical();
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int RunConfig::effective_threads() const { return threads == 0 ? hardware_threads() : threads; }

DensityPtr RunConfig::build_density() const {
  GaussianParams gp;
  gp.amplitude = density_amplitude;
  gp.width_x = density_width_x;
  gp.width_p = density_width_p;
  gp.center = density_center;
  BumpParams bp;
  bp.amplitude = density_amplitude;
  bp.radius_x = density_width_x;
  bp.radius_p = density_width_p;
  bp.center = density_center;
  if (density_kind == "gaussian") return make_gaussian(gp);
  if (density_kind == "compact_bump") return make_compact_bump(bp);
  if (density_kind == "free_streaming")
    return make_free_streaming(density_base == "gaussian" ? make_gaussian(gp)
                                                          : make_compact_bump(bp));
  return load_grid_density(density_manifest);  // validated: kind == grid
}

ConeRule RunConfig::cone_rule(const PhaseDensity& f) const {
  ConeRule r;
  r.s_nodes = cone_s_nodes;
  r.sphere_degree = cone_sphere_degree;
  r.momentum.n_radial = cone_p_radial;
  r.momentum.n_polar = cone_p_polar;
  r.momentum.n_azimuth = cone_p_azimuth;
  r.momentum.radius = f.support_radius_p();
  return r;
}

}  // namespace vmf
