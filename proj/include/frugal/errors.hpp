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

#include <stdexcept>
#include <string>

namespace frugal {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller passed a value outside an operation's domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Column layout problems: missing loc/label columns, mismatched schemas.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text (CSV cells, rule lists, JSON documents).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// The data cannot support the requested computation (single class,
/// zero total loc, empty minority, ...).
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

/// A learner or tuner parameter is unknown or out of its legal range.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Experiment configuration is inconsistent (manifest, config file, flags).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace frugal
