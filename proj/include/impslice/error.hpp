// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace impslice {

/// Error taxonomy shared by the library, the CLI exit codes and the HTTP
/// status mapping.
enum class ErrorKind {
    parse,
    duplicate_variable,
    unbound_variable,
    arithmetic_overflow,
    fuel_exhausted,
    lattice_mismatch,
    criterion_mismatch,
    join_error,
    size_exceeded,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
    [[nodiscard]] ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

class ParseError : public Error {
  public:
    ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected, const std::string& found);

    [[nodiscard]] std::size_t line() const { return line_; }
    [[nodiscard]] std::size_t column() const { return column_; }
    [[nodiscard]] const std::vector<std::string>& expected() const { return expected_; }

  private:
    std::size_t line_;
    std::size_t column_;
    std::vector<std::string> expected_;
};

class SizeExceeded : public Error {
  public:
    SizeExceeded(std::uint64_t cardinality, std::uint64_t bound);

    /// Saturates at UINT64_MAX.
    [[nodiscard]] std::uint64_t cardinality() const { return cardinality_; }
    [[nodiscard]] std::uint64_t bound() const { return bound_; }

  private:
    std::uint64_t cardinality_;
    std::uint64_t bound_;
};

} // namespace impslice
