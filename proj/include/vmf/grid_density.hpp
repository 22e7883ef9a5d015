#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "vmf/density.hpp"

namespace vmf {

// Raised when a grid manifest or payload violates the file contract; the
// message names the offending field.
struct IngestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridAxis {
  double min = 0.0, max = 0.0;
  int count = 0;
  double step() const { return count > 1 ? (max - min) / (count - 1) : 0.0; }
};

// In-memory realization of a gridded density: uniform axes in
// (x1,x2,x3,p1,p2,p3), one value block per time stamp, row-major with time
// slowest. Values are immutable after load.
struct GridData {
  std::array<GridAxis, 6> axes;  // x1 x2 x3 p1 p2 p3
  std::vector<double> times;
  std::vector<double> values;    // times.size() * prod(axes.count)
};

// Manifest: `key = value` lines with fields
//   format  = vmfield-grid-1
//   dtype   = float64-little-endian
//   payload = <relative file name>
//   crc64   = <16 lowercase hex digits, CRC-64/XZ of the payload bytes>
//   times   = <t0 t1 ...>
//   x1..p3  = <min> <max> <count>
// Payload: raw little-endian doubles ordered (t, x1, x2, x3, p1, p2, p3),
// slowest index first.
DensityPtr load_grid_density(const std::string& manifest_path);

// Writes manifest + payload in the same format (testing and data preparation).
void save_grid_density(const std::string& manifest_path, const GridData& data);

// CRC-64/XZ (reflected polynomial 0xC96C5795D7870F42).
std::uint64_t crc64(const void* data, std::size_t len);

}  // namespace vmf
