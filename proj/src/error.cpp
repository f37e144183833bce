// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#include "impslice/error.hpp"

#include <sstream>

namespace impslice {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::parse: return "parse_error";
    case ErrorKind::duplicate_variable: return "duplicate_variable";
    case ErrorKind::unbound_variable: return "unbound_variable";
    case ErrorKind::arithmetic_overflow: return "arithmetic_overflow";
    case ErrorKind::fuel_exhausted: return "fuel_exhausted";
    case ErrorKind::lattice_mismatch: return "lattice_mismatch";
    case ErrorKind::criterion_mismatch: return "criterion_mismatch";
    case ErrorKind::join_error: return "join_error";
    case ErrorKind::size_exceeded: return "size_exceeded";
    }
    return "unknown";
}

namespace {

std::string describe_parse_error(std::size_t line, std::size_t column, const std::vector<std::string>& expected,
                                 const std::string& found) {
    std::ostringstream os;
    os << line << ":" << column << ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i > 0) {
            os << (i + 1 == expected.size() ? " or " : ", ");
        }
        os << expected[i];
    }
    os << ", found " << found;
    return os.str();
}

} // namespace

ParseError::ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected, const std::string& found)
    : Error(ErrorKind::parse, describe_parse_error(line, column, expected, found)), line_(line), column_(column),
      expected_(std::move(expected)) {}

SizeExceeded::SizeExceeded(std::uint64_t cardinality, std::uint64_t bound)
    : Error(ErrorKind::size_exceeded,
            "lattice has " + std::to_string(cardinality) + " elements, bound is " + std::to_string(bound)),
      cardinality_(cardinality), bound_(bound) {}

} // namespace impslice
