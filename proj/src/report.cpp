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

#include "qfound/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "qfound/error.hpp"

namespace qfound::cli {

double round_sig(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

Json rounded(const Json& j) {
  if (j.is_number_float()) return round_sig(j.get<double>());
  if (j.is_array() || j.is_object()) {
    Json out = j;
    for (auto& item : out) item = rounded(item);
    return out;
  }
  return j;
}

const char* relation_symbol(Relation r) {
  switch (r) {
    case Relation::Le: return "<=";
    case Relation::Lt: return "<";
    case Relation::Ge: return ">=";
    case Relation::Gt: return ">";
    case Relation::Eq: return "==";
    case Relation::Approx: return "~=";
  }
  return "?";
}

Relation parse_relation(const std::string& s) {
  for (Relation r : {Relation::Le, Relation::Lt, Relation::Ge, Relation::Gt, Relation::Eq,
                     Relation::Approx})
    if (s == relation_symbol(r)) return r;
  throw InputError("unknown relation '" + s + "'");
}

bool holds(double lhs, Relation op, double rhs, double tol) {
  switch (op) {
    case Relation::Le: return lhs <= rhs;
    case Relation::Lt: return lhs < rhs;
    case Relation::Ge: return lhs >= rhs;
    case Relation::Gt: return lhs > rhs;
    case Relation::Eq: return lhs == rhs;
    case Relation::Approx: return std::abs(lhs - rhs) <= tol;
  }
  return false;
}

Report::Report(std::string command) : command_(std::move(command)) {}

void Report::input(const std::string& key, const Json& value) { inputs_[key] = rounded(value); }

void Report::output(const std::string& key, const Json& value) { outputs_[key] = rounded(value); }

void Report::tolerance(const std::string& key, double value) { tolerances_[key] = round_sig(value); }

bool Report::check(const std::string& name, const std::string& claim, double lhs, Relation op,
                   double rhs, double tol) {
  const double l = round_sig(lhs), r = round_sig(rhs), t = round_sig(tol);
  const bool pass = holds(l, op, r, t);
  Json c;
  c["name"] = name;
  c["claim"] = claim;
  c["lhs"] = l;
  c["op"] = relation_symbol(op);
  c["rhs"] = r;
  c["tol"] = t;
  c["verdict"] = pass ? "PASS" : "FAIL";
  checks_.push_back(std::move(c));
  return pass;
}

bool Report::all_pass() const {
  for (const auto& c : checks_)
    if (c["verdict"] != "PASS") return false;
  return true;
}

Json Report::to_json(double wall_time_s) const {
  Json j;
  j["command"] = command_;
  j["inputs"] = inputs_;
  j["outputs"] = outputs_;
  j["checks"] = checks_;
  j["tolerances"] = tolerances_;
  j["seed"] = seed_ ? Json(*seed_) : Json(nullptr);
  if (!notes_.empty()) j["notes"] = notes_;
  j["status"] = all_pass() ? "PASS" : "FAIL";
  j["wall_time_s"] = round_sig(wall_time_s, 3);
  return j;
}

namespace {

void flatten(const std::string& prefix, const Json& j, std::ostringstream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(prefix.empty() ? it.key() : prefix + "." + it.key(), it.value(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(prefix + "." + std::to_string(i), j[i], out);
  } else {
    std::string value = j.is_string() ? j.get<std::string>() : j.dump();
    if (value.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char ch : value) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      value = quoted + "\"";
    }
    out << prefix << ',' << value << '\n';
  }
}

}  // namespace

std::string Report::to_csv(double wall_time_s) const {
  std::ostringstream out;
  out << "key,value\n";
  Json j = to_json(wall_time_s);
  // One row per check verdict instead of the whole check record.
  Json verdicts = Json::object();
  for (const auto& c : j["checks"]) verdicts[c["name"].get<std::string>()] = c["verdict"];
  j["checks"] = verdicts;
  flatten("", j, out);
  return out.str();
}

bool verdicts_reproduce(const Json& report) {
  bool all = true;
  for (const auto& c : report.at("checks")) {
    const bool pass = holds(c.at("lhs").get<double>(), parse_relation(c.at("op")),
                            c.at("rhs").get<double>(), c.at("tol").get<double>());
    if ((pass ? "PASS" : "FAIL") != c.at("verdict").get<std::string>()) return false;
    all &= pass;
  }
  return (all ? "PASS" : "FAIL") == report.at("status").get<std::string>();
}

}  // namespace qfound::cli
