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

#include "frugal/param_space.hpp"

#include "frugal/detail/text.hpp"
#include "frugal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace frugal {

std::string to_string(const ParamValue& v) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "none"; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const { return detail::format_double(d); }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, v);
}

bool is_none(const ParamValue& v) { return std::holds_alternative<std::monostate>(v); }

ParamSpec ParamSpec::continuous(std::string name, double lo, double hi, ParamValue def, std::string description) {
  ParamSpec s{std::move(name), ParamKind::continuous, lo, hi, {}, std::move(def), std::move(description)};
  s.default_value = s.coerce(s.default_value);
  s.validate();
  return s;
}

ParamSpec ParamSpec::integer(std::string name, std::int64_t lo, std::int64_t hi, ParamValue def,
                             std::string description) {
  ParamSpec s{std::move(name), ParamKind::integer, static_cast<double>(lo), static_cast<double>(hi), {},
              std::move(def), std::move(description)};
  s.default_value = s.coerce(s.default_value);
  s.validate();
  return s;
}

ParamSpec ParamSpec::categorical(std::string name, std::vector<std::string> choices, ParamValue def,
                                 std::string description) {
  ParamSpec s{std::move(name), ParamKind::categorical, 0.0, 0.0, std::move(choices), std::move(def),
              std::move(description)};
  s.validate();
  return s;
}

ParamSpec ParamSpec::boolean(std::string name, ParamValue def, std::string description) {
  ParamSpec s{std::move(name), ParamKind::boolean, 0.0, 1.0, {}, std::move(def), std::move(description)};
  s.validate();
  return s;
}

void ParamSpec::validate() const {
  if (name.empty()) throw ValidationError("parameter without a name");
  if (numeric() && !(lo < hi)) throw ValidationError("parameter '" + name + "' needs lo < hi");
  if (kind == ParamKind::categorical && choices.empty()) {
    throw ValidationError("categorical parameter '" + name + "' has no choices");
  }
  if (!is_none(default_value) && !contains(default_value)) {
    throw ValidationError("default of '" + name + "' is outside its range");
  }
}

bool ParamSpec::contains(const ParamValue& v) const {
  if (is_none(v)) return is_none(default_value);
  switch (kind) {
    case ParamKind::continuous: {
      const auto* d = std::get_if<double>(&v);
      return d && *d >= lo && *d <= hi;
    }
    case ParamKind::integer: {
      const auto* i = std::get_if<std::int64_t>(&v);
      return i && static_cast<double>(*i) >= lo && static_cast<double>(*i) <= hi;
    }
    case ParamKind::categorical: {
      const auto* s = std::get_if<std::string>(&v);
      return s && std::find(choices.begin(), choices.end(), *s) != choices.end();
    }
    case ParamKind::boolean: return std::holds_alternative<bool>(v);
  }
  return false;
}

ParamValue ParamSpec::sample(Rng& rng) const {
  switch (kind) {
    case ParamKind::continuous: return rng.uniform(lo, hi);
    case ParamKind::integer:
      return rng.between(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi));
    case ParamKind::categorical: return choices[rng.below(choices.size())];
    case ParamKind::boolean: return rng.coin();
  }
  return {};
}

ParamValue ParamSpec::trim(double raw) const {
  if (kind == ParamKind::integer) {
    const double r = std::round(raw);  // half away from zero
    return static_cast<std::int64_t>(std::clamp(r, lo, hi));
  }
  if (kind == ParamKind::continuous) return std::clamp(raw, lo, hi);
  throw ArgumentError("trim applies to numeric parameters only");
}

double ParamSpec::as_number(const ParamValue& v) const {
  if (is_none(v)) return hi;
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? 1.0 : 0.0;
  throw ArgumentError("parameter '" + name + "' is not numeric");
}

ParamValue ParamSpec::coerce(const ParamValue& v) const {
  if (is_none(v)) return v;
  if (kind == ParamKind::continuous) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  }
  if (kind == ParamKind::integer) {
    if (const auto* d = std::get_if<double>(&v)) {
      if (std::floor(*d) == *d) return static_cast<std::int64_t>(*d);
    }
  }
  if (kind == ParamKind::categorical) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  }
  return v;
}

ParamValue ParamSpec::parse(std::string_view text) const {
  const auto t = detail::trim(text);
  if (detail::iequals(t, "none")) return std::monostate{};
  switch (kind) {
    case ParamKind::continuous:
      if (auto d = detail::parse_double(t)) return *d;
      break;
    case ParamKind::integer:
      if (auto d = detail::parse_double(t); d && std::floor(*d) == *d) return static_cast<std::int64_t>(*d);
      break;
    case ParamKind::categorical: return std::string(t);
    case ParamKind::boolean:
      if (detail::iequals(t, "true") || t == "1") return true;
      if (detail::iequals(t, "false") || t == "0") return false;
      break;
  }
  throw ValidationError("cannot parse '" + std::string(t) + "' for parameter '" + name + "'");
}

// ---------------------------------------------------------------------------

ParamSpace::ParamSpace(std::vector<ParamSpec> specs) : specs_(std::move(specs)) {
  std::set<std::string> names;
  for (const auto& s : specs_) {
    s.validate();
    if (!names.insert(s.name).second) throw ValidationError("duplicate parameter '" + s.name + "'");
  }
}

std::optional<std::size_t> ParamSpace::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    if (specs_[i].name == name) return i;
  }
  return std::nullopt;
}

const ParamSpec& ParamSpace::at(std::string_view name) const {
  if (auto i = index_of(name)) return specs_[*i];
  throw ValidationError("unknown parameter '" + std::string(name) + "'");
}

Candidate ParamSpace::defaults() const {
  Candidate c;
  for (const auto& s : specs_) c.tunings.push_back(s.default_value);
  return c;
}

bool ParamSpace::contains(const Candidate& c) const {
  if (c.tunings.size() != specs_.size()) return false;
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    if (!specs_[i].contains(c.tunings[i])) return false;
  }
  return true;
}

Candidate ParamSpace::sample(Rng& rng) const {
  Candidate c;
  c.tunings.reserve(specs_.size());
  for (const auto& s : specs_) c.tunings.push_back(s.sample(rng));
  return c;
}

}  // namespace frugal
