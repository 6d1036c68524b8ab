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

#include <fstream>
#include <iomanip>
#include <sstream>

#include "qfound/contextuality.hpp"
#include "qfound/error.hpp"

namespace qfound::ks {

std::vector<Ray3> read_rays(std::istream& in) {
  std::vector<Ray3> rays;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    Vec3 v;
    int count = 0;
    double x;
    while (fields >> x) {
      if (count < 3) v[count] = x;
      ++count;
    }
    if (!fields.eof())
      throw InputError("ray file line " + std::to_string(lineno) + ": not a number");
    if (count == 0) continue;
    if (count != 3)
      throw InputError("ray file line " + std::to_string(lineno) + ": expected 3 components, got " +
                       std::to_string(count));
    try {
      rays.emplace_back(v);
    } catch (const InputError&) {
      throw InputError("ray file line " + std::to_string(lineno) + ": zero vector");
    }
  }
  return rays;
}

std::vector<Ray3> read_ray_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open ray file " + path);
  return read_rays(in);
}

void write_rays(std::ostream& out, const std::vector<Ray3>& rays) {
  out << "# " << rays.size() << " rays, canonical representatives\n";
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(17);
  for (const auto& r : rays) out << r[0] << ' ' << r[1] << ' ' << r[2] << '\n';
  out.flags(flags);
  out.precision(precision);
}

}  // namespace qfound::ks
