#pragma once

#include <string>
#include <utility>
#include <vector>

namespace vmf {

// Flat `key = value` text, one pair per line, '#' comments, blank lines ignored.
// Order-preserving; duplicate keys are an error at a higher layer.
std::vector<std::pair<std::string, std::string>> parse_kv_text(const std::string& text);
std::vector<std::pair<std::string, std::string>> parse_kv_file(const std::string& path);

std::string trim(const std::string& s);
std::vector<std::string> split_ws(const std::string& s);

}  // namespace vmf
