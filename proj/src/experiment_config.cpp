// Copyright 2026 The qfound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "qfound/error.hpp"
#include "qfound/simlab.hpp"

namespace qfound::sim {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(int lineno, const std::string& what) {
  throw InputError("config line " + std::to_string(lineno) + ": " + what);
}

Vec3 parse_vec3(std::string text, int lineno) {
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream in(text);
  Vec3 v;
  for (double& x : v)
    if (!(in >> x)) fail(lineno, "expected three components");
  std::string extra;
  if (in >> extra) fail(lineno, "expected three components");
  if (norm(v) == 0.0) fail(lineno, "setting direction is the zero vector");
  return normalized(v);
}

template <typename T>
T parse_number(const std::string& text, int lineno) {
  if (std::is_unsigned_v<T> && !text.empty() && text.front() == '-')
    fail(lineno, "'" + text + "' must not be negative");
  std::istringstream in(text);
  T value;
  if (!(in >> value)) fail(lineno, "'" + text + "' is not a number");
  std::string extra;
  if (in >> extra) fail(lineno, "trailing text after '" + text + "'");
  return value;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  Vec3 a = cfg.settings.a.direction(), ap = cfg.settings.a_prime.direction();
  Vec3 b = cfg.settings.b.direction(), bp = cfg.settings.b_prime.direction();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "source") {
      cfg.source = value;
    } else if (key == "n_pairs") {
      cfg.n_pairs = parse_number<std::int64_t>(value, lineno);
    } else if (key == "visibility") {
      cfg.visibility = parse_number<double>(value, lineno);
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(value, lineno);
    } else if (key == "workers") {
      cfg.workers = parse_number<int>(value, lineno);
    } else if (key == "a") {
      a = parse_vec3(value, lineno);
    } else if (key == "a_prime") {
      ap = parse_vec3(value, lineno);
    } else if (key == "b") {
      b = parse_vec3(value, lineno);
    } else if (key == "b_prime") {
      bp = parse_vec3(value, lineno);
    } else {
      fail(lineno, "unknown key '" + key + "'");
    }
  }
  cfg.settings = {nonlocal::SpinSetting(a), nonlocal::SpinSetting(ap), nonlocal::SpinSetting(b),
                  nonlocal::SpinSetting(bp)};
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path);
  return parse_config(in);
}

}  // namespace qfound::sim
