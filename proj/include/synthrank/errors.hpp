// Copyright 2026 The synthrank Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#pragma once

/// @file
/// Exception hierarchy shared across the library.

#include <stdexcept>
#include <string>

namespace synthrank {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed textual input (formula, CIF, CSV, JSONL, ...).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_ = 0;
};

/// A value violates a documented precondition or invariant.
class ValueError : public Error {
public:
    explicit ValueError(const std::string& msg) : Error(msg) {}
};

/// Filesystem / stream failure.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

/// Bad or inconsistent configuration.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// Reaction balancing: the element-conservation system has no
/// admissible solution.
class InfeasibleError : public Error {
public:
    explicit InfeasibleError(const std::string& msg) : Error(msg) {}
};

/// Reaction balancing: the system admits a family of solutions and no
/// selection rule was requested.
class UnderdeterminedError : public Error {
public:
    UnderdeterminedError(const std::string& msg, int degrees)
        : Error(msg), degrees_(degrees) {}
    /// Dimension of the solution space beyond the particular solution.
    int degrees() const { return degrees_; }

private:
    int degrees_;
};

}  // namespace synthrank
