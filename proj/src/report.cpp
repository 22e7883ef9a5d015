#include "vmf/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace vmf {

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void EstimateReport::add_case(std::map<std::string, double> inputs, double measured, double bound,
                              std::string note) {
  EstimateCase c;
  c.inputs = std::move(inputs);
  c.measured = measured;
  c.bound = bound;
  c.ratio = bound != 0.0 ? measured / bound : (measured == 0.0 ? 0.0 : INFINITY);
  c.note = std::move(note);
  cases.push_back(std::move(c));
}

void EstimateReport::finalize_fit() {
  double fit = 0.0;
  for (const auto& c : cases) {
    if (!std::isfinite(c.measured) || !std::isfinite(c.ratio)) {
      std::string where = name + " case:";
      for (const auto& [k, v] : c.inputs) where += " " + k + "=" + format_double(v);
      throw std::runtime_error("non-finite value in " + where);
    }
    if (c.ratio > fit) fit = c.ratio;
  }
  fitted_constant = fit;
}

std::string EstimateReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["config_hash"] = config_hash;
  j["fitted_constant"] = fitted_constant;
  j["pass"] = pass;
  nlohmann::json tol = nlohmann::json::object();
  for (const auto& [k, v] : tolerances) tol[k] = v;
  j["tolerances"] = tol;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : cases) {
    nlohmann::json jc;
    nlohmann::json in = nlohmann::json::object();
    for (const auto& [k, v] : c.inputs) in[k] = v;
    jc["inputs"] = in;
    jc["measured"] = c.measured;
    jc["bound"] = c.bound;
    jc["ratio"] = c.ratio;
    if (!c.note.empty()) jc["note"] = c.note;
    arr.push_back(jc);
  }
  j["cases"] = arr;
  return j.dump(2);
}

void EstimateReport::write_json(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json() << "\n";
}

void EstimateReport::write_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  // union of input keys, sorted, gives the column set
  std::set<std::string> keys;
  for (const auto& c : cases)
    for (const auto& [k, v] : c.inputs) keys.insert(k);
  for (const auto& k : keys) out << k << ",";
  out << "measured,bound,ratio,note\n";
  for (const auto& c : cases) {
    for (const auto& k : keys) {
      auto it = c.inputs.find(k);
      if (it != c.inputs.end()) out << format_double(it->second);
      out << ",";
    }
    out << format_double(c.measured) << "," << format_double(c.bound) << ","
        << format_double(c.ratio) << "," << c.note << "\n";
  }
}

}  // namespace vmf
