// Copyright 2026 The ripost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ripost {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid configuration: bad hyperparameters, malformed config files,
/// unknown columns, invalid series parameters. CLI exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input data could not be ingested (bad CSV cell, out-of-domain value).
/// CLI exit code 3.
class IngestError : public Error {
 public:
  using Error::Error;
};

/// A rect, coordinate or depth argument lies outside its valid domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A range query does not fit the view/tensor domain.
class QueryError : public Error {
 public:
  using Error::Error;
};

/// A serialized artifact (view, tensor, workload) is malformed or fails
/// validation on load.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Invariant violation that indicates an implementation bug, never a data
/// condition. Budget overcharges land here. CLI exit code 4.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ripost
