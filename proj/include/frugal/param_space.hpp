// Copyright 2026 The frugal Authors
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

#include "frugal/random.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace frugal {

enum class ParamKind { continuous, integer, categorical, boolean };

/// A tuning value. std::monostate stands for a "None" default, i.e. the
/// learner's built-in behaviour (unlimited leaves, kernel-dependent gamma).
using ParamValue = std::variant<std::monostate, bool, std::int64_t, double, std::string>;

std::string to_string(const ParamValue& v);
bool is_none(const ParamValue& v);

/// One tunable dimension.
struct ParamSpec {
  std::string name;
  ParamKind kind = ParamKind::continuous;
  double lo = 0.0;
  double hi = 1.0;
  std::vector<std::string> choices;
  ParamValue default_value;
  std::string description;

  static ParamSpec continuous(std::string name, double lo, double hi, ParamValue def, std::string description = {});
  static ParamSpec integer(std::string name, std::int64_t lo, std::int64_t hi, ParamValue def,
                           std::string description = {});
  static ParamSpec categorical(std::string name, std::vector<std::string> choices, ParamValue def,
                               std::string description = {});
  static ParamSpec boolean(std::string name, ParamValue def, std::string description = {});

  bool numeric() const { return kind == ParamKind::continuous || kind == ParamKind::integer; }

  /// Throws ValidationError on lo >= hi, empty choices or an illegal default.
  void validate() const;
  /// In range; "None" is legal only when it is the default.
  bool contains(const ParamValue& v) const;
  /// Uniform draw over the legal range (never "None").
  ParamValue sample(Rng& rng) const;
  /// Clamps a raw numeric value to [lo, hi]; integers round half away from zero first.
  ParamValue trim(double raw) const;
  /// Numeric view for extrapolation; "None" maps to `hi`.
  double as_number(const ParamValue& v) const;
  /// Converts loosely-typed input (e.g. an int given for a continuous dim).
  ParamValue coerce(const ParamValue& v) const;
  /// Parses command-line/config text ("0.5", "12", "true", "rbf", "none").
  ParamValue parse(std::string_view text) const;
};

struct Candidate {
  std::vector<ParamValue> tunings;
  std::optional<double> score;

  bool operator==(const Candidate& other) const { return tunings == other.tunings && score == other.score; }
};

class ParamSpace {
 public:
  ParamSpace() = default;
  explicit ParamSpace(std::vector<ParamSpec> specs);

  std::size_t size() const { return specs_.size(); }
  bool empty() const { return specs_.empty(); }
  const ParamSpec& operator[](std::size_t i) const { return specs_[i]; }
  const std::vector<ParamSpec>& specs() const { return specs_; }
  auto begin() const { return specs_.begin(); }
  auto end() const { return specs_.end(); }

  std::optional<std::size_t> index_of(std::string_view name) const;
  const ParamSpec& at(std::string_view name) const;

  /// Candidate holding every default.
  Candidate defaults() const;
  bool contains(const Candidate& c) const;
  Candidate sample(Rng& rng) const;

 private:
  std::vector<ParamSpec> specs_;
};

}  // namespace frugal
