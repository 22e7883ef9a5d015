#include "vmf/grid_density.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vmf/kv.hpp"

namespace vmf {

// ---------------------------------------------------------------------------
// key-value text

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<std::pair<std::string, std::string>> parse_kv_text(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected `key = value`");
    out.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> parse_kv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_kv_text(ss.str());
}

// ---------------------------------------------------------------------------
// CRC-64/XZ

namespace {

const std::uint64_t* crc64_table() {
  static std::uint64_t table[256];
  static bool init = [] {
    const std::uint64_t poly = 0xC96C5795D7870F42ULL;
    for (int i = 0; i < 256; ++i) {
      std::uint64_t c = static_cast<std::uint64_t>(i);
      for (int b = 0; b < 8; ++b) c = (c & 1) ? (c >> 1) ^ poly : c >> 1;
      table[i] = c;
    }
    return true;
  }();
  (void)init;
  return table;
}

}  // namespace

std::uint64_t crc64(const void* data, std::size_t len) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  const std::uint64_t* t = crc64_table();
  std::uint64_t c = ~0ULL;
  for (std::size_t i = 0; i < len; ++i) c = t[(c ^ bytes[i]) & 0xFF] ^ (c >> 8);
  return ~c;
}

// ---------------------------------------------------------------------------
// density backed by grid data

namespace {

constexpr const char* kAxisNames[6] = {"x1", "x2", "x3", "p1", "p2", "p3"};

class GriddedDensity final : public PhaseDensity {
 public:
  explicit GriddedDensity(GridData data) : d_(std::move(data)) {
    std::size_t block = 1;
    for (const auto& a : d_.axes) block *= static_cast<std::size_t>(a.count);
    block_ = block;
    sup_ = 0.0;
    for (double v : d_.values) sup_ = std::max(sup_, v);
    for (int i = 0; i < 3; ++i) {
      center_[i] = 0.5 * (d_.axes[i].min + d_.axes[i].max);
      rx_ = std::max(rx_, 0.5 * (d_.axes[i].max - d_.axes[i].min));
    }
    for (int i = 3; i < 6; ++i)
      rp_ = std::max({rp_, std::abs(d_.axes[i].min), std::abs(d_.axes[i].max)});
  }

  double evaluate(double t, const Vec3& x, const Vec3& p) const override {
    const double c[6] = {x.x, x.y, x.z, p.x, p.y, p.z};
    int base[6];
    double frac[6];
    for (int i = 0; i < 6; ++i) {
      const GridAxis& a = d_.axes[i];
      if (c[i] < a.min || c[i] > a.max) return 0.0;
      double u = (c[i] - a.min) / a.step();
      int idx = static_cast<int>(u);
      if (idx >= a.count - 1) idx = a.count - 2;
      base[i] = idx;
      frac[i] = u - idx;
    }
    const double* slab = d_.values.data() + time_index(t) * block_;
    double acc = 0.0;
    for (int corner = 0; corner < 64; ++corner) {
      double w = 1.0;
      std::size_t off = 0;
      for (int i = 0; i < 6; ++i) {
        int bit = (corner >> i) & 1;
        w *= bit ? frac[i] : 1.0 - frac[i];
        off = off * d_.axes[i].count + (base[i] + bit);
      }
      if (w != 0.0) acc += w * slab[off];
    }
    return acc;
  }

  bool has_fourier() const override { return true; }

  std::complex<double> fourier_x(double t, const Vec3& xi, const Vec3& p) const override {
    // separable discrete transform over the x-axes at the p-interpolated slice
    const double pc[3] = {p.x, p.y, p.z};
    int pbase[3];
    double pfrac[3];
    for (int i = 0; i < 3; ++i) {
      const GridAxis& a = d_.axes[3 + i];
      if (pc[i] < a.min || pc[i] > a.max) return 0.0;
      double u = (pc[i] - a.min) / a.step();
      int idx = static_cast<int>(u);
      if (idx >= a.count - 1) idx = a.count - 2;
      pbase[i] = idx;
      pfrac[i] = u - idx;
    }
    const int n1 = d_.axes[0].count, n2 = d_.axes[1].count, n3 = d_.axes[2].count;
    const int m1 = d_.axes[3].count, m2 = d_.axes[4].count, m3 = d_.axes[5].count;
    const double xic[3] = {xi.x, xi.y, xi.z};
    std::array<std::vector<std::complex<double>>, 3> ph;
    for (int i = 0; i < 3; ++i) {
      const GridAxis& a = d_.axes[i];
      ph[i].resize(a.count);
      for (int n = 0; n < a.count; ++n) {
        double xn = a.min + n * a.step();
        ph[i][n] = std::polar(1.0, -xic[i] * xn);
      }
    }
    const double* slab = d_.values.data() + time_index(t) * block_;
    auto value_at = [&](int i1, int i2, int i3) {
      double acc = 0.0;
      for (int corner = 0; corner < 8; ++corner) {
        double w = 1.0;
        int pi[3];
        for (int i = 0; i < 3; ++i) {
          int bit = (corner >> i) & 1;
          w *= bit ? pfrac[i] : 1.0 - pfrac[i];
          pi[i] = pbase[i] + bit;
        }
        if (w == 0.0) continue;
        std::size_t off = ((((static_cast<std::size_t>(i1) * n2 + i2) * n3 + i3) * m1 + pi[0]) *
                               m2 + pi[1]) * m3 + pi[2];
        acc += w * slab[off];
      }
      return acc;
    };
    std::complex<double> s1 = 0.0;
    for (int i1 = 0; i1 < n1; ++i1) {
      std::complex<double> s2 = 0.0;
      for (int i2 = 0; i2 < n2; ++i2) {
        std::complex<double> s3 = 0.0;
        for (int i3 = 0; i3 < n3; ++i3) s3 += ph[2][i3] * value_at(i1, i2, i3);
        s2 += ph[1][i2] * s3;
      }
      s1 += ph[0][i1] * s2;
    }
    return s1 * (d_.axes[0].step() * d_.axes[1].step() * d_.axes[2].step());
  }

  double sup_bound() const override { return sup_; }
  double support_radius_x(double) const override { return rx_ * 1.7320508075688772 + 1.0; }
  double support_radius_p() const override { return rp_ * 1.7320508075688772; }
  Vec3 center_x() const override { return center_; }

 private:
  std::size_t time_index(double t) const {
    std::size_t best = 0;
    double dist = std::abs(t - d_.times[0]);
    for (std::size_t i = 1; i < d_.times.size(); ++i) {
      double di = std::abs(t - d_.times[i]);
      if (di < dist) {
        dist = di;
        best = i;
      }
    }
    return best;
  }

  GridData d_;
  std::size_t block_ = 0;
  double sup_ = 0.0, rx_ = 0.0, rp_ = 0.0;
  Vec3 center_{};
};

GridAxis parse_axis(const std::string& key, const std::string& value) {
  auto parts = split_ws(value);
  if (parts.size() != 3) throw IngestError("manifest field `" + key + "`: expected min max count");
  GridAxis a;
  try {
    a.min = std::stod(parts[0]);
    a.max = std::stod(parts[1]);
    a.count = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw IngestError("manifest field `" + key + "`: unparseable number");
  }
  if (!(a.max > a.min) || a.count < 2)
    throw IngestError("manifest field `" + key + "`: need max > min and count >= 2");
  return a;
}

}  // namespace

DensityPtr load_grid_density(const std::string& manifest_path) {
  namespace fs = std::filesystem;
  std::vector<std::pair<std::string, std::string>> kv;
  try {
    kv = parse_kv_file(manifest_path);
  } catch (const std::exception& e) {
    throw IngestError(std::string("manifest: ") + e.what());
  }
  GridData d;
  std::string payload, crc_text, format, dtype;
  bool have_axis[6] = {};
  for (const auto& [k, v] : kv) {
    if (k == "format") format = v;
    else if (k == "dtype") dtype = v;
    else if (k == "payload") payload = v;
    else if (k == "crc64") crc_text = v;
    else if (k == "times") {
      for (const auto& tok : split_ws(v)) {
        try {
          d.times.push_back(std::stod(tok));
        } catch (const std::exception&) {
          throw IngestError("manifest field `times`: unparseable number");
        }
      }
    } else {
      bool matched = false;
      for (int i = 0; i < 6; ++i)
        if (k == kAxisNames[i]) {
          d.axes[i] = parse_axis(k, v);
          have_axis[i] = true;
          matched = true;
        }
      if (!matched) throw IngestError("manifest: unknown field `" + k + "`");
    }
  }
  if (format != "vmfield-grid-1") throw IngestError("manifest field `format`: unsupported value");
  if (dtype != "float64-little-endian")
    throw IngestError("manifest field `dtype`: unsupported value");
  if (payload.empty()) throw IngestError("manifest field `payload`: missing");
  if (d.times.empty()) throw IngestError("manifest field `times`: missing or empty");
  for (int i = 0; i < 6; ++i)
    if (!have_axis[i]) throw IngestError(std::string("manifest field `") + kAxisNames[i] +
                                         "`: missing");

  fs::path dir = fs::path(manifest_path).parent_path();
  fs::path ppath = dir / payload;
  std::ifstream in(ppath, std::ios::binary);
  if (!in) throw IngestError("payload: cannot open " + ppath.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  std::size_t expect = d.times.size();
  for (const auto& a : d.axes) expect *= static_cast<std::size_t>(a.count);
  if (bytes.size() != expect * sizeof(double))
    throw IngestError("payload: size mismatch, expected " + std::to_string(expect) +
                      " float64 values, found " + std::to_string(bytes.size() / sizeof(double)));

  if (crc_text.size() != 16) throw IngestError("manifest field `crc64`: expected 16 hex digits");
  std::uint64_t declared = 0;
  for (char c : crc_text) {
    int dig;
    if (c >= '0' && c <= '9') dig = c - '0';
    else if (c >= 'a' && c <= 'f') dig = c - 'a' + 10;
    else throw IngestError("manifest field `crc64`: invalid hex digit");
    declared = declared << 4 | static_cast<std::uint64_t>(dig);
  }
  if (crc64(bytes.data(), bytes.size()) != declared)
    throw IngestError("payload: crc64 mismatch against manifest field `crc64`");

  d.values.resize(expect);
  std::memcpy(d.values.data(), bytes.data(), bytes.size());
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    if (!std::isfinite(d.values[i]))
      throw IngestError("payload: non-finite value at flat index " + std::to_string(i));
    if (d.values[i] < 0.0)
      throw IngestError("payload: negative value at flat index " + std::to_string(i));
  }
  return std::make_shared<GriddedDensity>(std::move(d));
}

void save_grid_density(const std::string& manifest_path, const GridData& data) {
  namespace fs = std::filesystem;
  std::size_t expect = data.times.size();
  for (const auto& a : data.axes) expect *= static_cast<std::size_t>(a.count);
  if (data.values.size() != expect)
    throw std::invalid_argument("save_grid_density: value count does not match axes");

  fs::path mpath(manifest_path);
  fs::path ppath = mpath;
  ppath.replace_extension(".f64");
  {
    std::ofstream out(ppath, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + ppath.string());
    out.write(reinterpret_cast<const char*>(data.values.data()),
              static_cast<std::streamsize>(data.values.size() * sizeof(double)));
  }
  std::uint64_t crc = crc64(data.values.data(), data.values.size() * sizeof(double));
  char crchex[17];
  std::snprintf(crchex, sizeof(crchex), "%016llx", static_cast<unsigned long long>(crc));

  std::ofstream out(mpath, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + manifest_path);
  out << "format = vmfield-grid-1\n";
  out << "dtype = float64-little-endian\n";
  out << "payload = " << ppath.filename().string() << "\n";
  out << "crc64 = " << crchex << "\n";
  out << "times =";
  for (double t : data.times) out << " " << t;
  out << "\n";
  for (int i = 0; i < 6; ++i) {
    out << kAxisNames[i] << " = " << data.axes[i].min << " " << data.axes[i].max << " "
        << data.axes[i].count << "\n";
  }
}

}  // namespace vmf
