// Copyright 2026 The qsv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsv {

/// Base class for all recoverable errors raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Allocating or combining states would exceed the memory budget.
class CapacityError : public Error {
  public:
    CapacityError(const std::string &msg, std::uint64_t required, std::uint64_t budget)
        : Error(msg), required_bytes(required), budget_bytes(budget) {}

    std::uint64_t required_bytes;
    std::uint64_t budget_bytes;
};

/// A circuit failed structural validation; `issues` lists every violation.
class ValidationError : public Error {
  public:
    ValidationError(const std::string &msg, std::vector<std::string> found)
        : Error(msg), issues(std::move(found)) {}

    std::vector<std::string> issues;
};

/// Source-positioned error from the QASM parser.
class QasmError : public Error {
  public:
    QasmError(const std::string &msg, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", col " + std::to_string(column) + ": " + msg),
          line(line), column(column) {}

    std::size_t line;
    std::size_t column;
};

/// A gate spans more qubits than the blocking boundary allows.
class BlockingError : public Error {
  public:
    using Error::Error;
};

/// State norm deviates too far from 1 for sampling to be meaningful.
class NormalizationError : public Error {
  public:
    using Error::Error;
};

} // namespace qsv
