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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace frugal::detail {

std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);
/// Fixed-point text with `digits` decimals.
std::string format_fixed(double v, int digits);

/// Whole-string decimal parse; nullopt on any trailing garbage.
std::optional<double> parse_double(std::string_view s);

}  // namespace frugal::detail
