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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qfound::cli {

using Json = nlohmann::ordered_json;

/// x rounded to `digits` significant decimal digits.
double round_sig(double x, int digits = 9);
/// Copy of j with every floating-point number passed through round_sig.
Json rounded(const Json& j);

enum class Relation { Le, Lt, Ge, Gt, Eq, Approx };

const char* relation_symbol(Relation r);
Relation parse_relation(const std::string& symbol);
/// lhs op rhs; Approx means |lhs - rhs| <= tol, Eq means lhs == rhs.
bool holds(double lhs, Relation op, double rhs, double tol);

/**
 * Machine-readable result of one subcommand.
 *
 * Every number is rounded to 9 significant digits when recorded, and each
 * check's verdict is computed from the rounded numbers it stores, so a parser
 * of the emitted JSON reaches the same verdicts.
 */
class Report {
 public:
  explicit Report(std::string command);

  void input(const std::string& key, const Json& value);
  void output(const std::string& key, const Json& value);
  void tolerance(const std::string& key, double value);
  void seed(std::uint64_t s) { seed_ = s; }
  void note(const std::string& text) { notes_.push_back(text); }

  /// Records `lhs op rhs` (with tol for Approx) and returns the verdict.
  bool check(const std::string& name, const std::string& claim, double lhs, Relation op,
             double rhs, double tol = 0.0);

  bool all_pass() const;
  const std::string& command() const { return command_; }

  Json to_json(double wall_time_s) const;
  /// Flat key,value rows: one per scalar (arrays and objects are flattened).
  std::string to_csv(double wall_time_s) const;

 private:
  std::string command_;
  Json inputs_ = Json::object();
  Json outputs_ = Json::object();
  Json tolerances_ = Json::object();
  Json checks_ = Json::array();
  std::optional<std::uint64_t> seed_;
  std::vector<std::string> notes_;
};

/// Re-derives every check verdict of a parsed report from its numbers.
/// Returns true when all recomputed verdicts equal the recorded ones.
bool verdicts_reproduce(const Json& report);

}  // namespace qfound::cli
