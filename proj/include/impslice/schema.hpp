// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include "impslice/ast.hpp"
#include "impslice/error.hpp"
#include "impslice/lattice.hpp"
#include "impslice/oracle.hpp"
#include "impslice/trace.hpp"

namespace impslice::schema {

// Machine-readable format shared by the CLI and the HTTP service; see
// docs/schema.md. Holes are the string "_"; states are ordered arrays of
// {"name", "value"} with null for a hole.

using Json = nlohmann::json;

inline constexpr int version = 1;

Json to_json(const PartialArith& a);
Json to_json(const PartialBool& b);
Json to_json(const PartialCommand& c);
Json to_json(const ArithExpr& a);
Json to_json(const BoolExpr& b);
Json to_json(const Command& c);
Json to_json(const State& s);
Json to_json(const PartialState& s);
Json to_json(const SliceOutcome& s);
Json to_json(const TraceStats& s);
Json to_json(const ArithTrace& t);
Json to_json(const BoolTrace& t);
Json to_json(const CmdTrace& t);
Json to_json(const CheckReport& r);
/// {"error": kind, "message": ...}; parse errors add line, column, expected.
Json to_json(const Error& e);

// Decoders throw Error(ErrorKind::parse) on malformed documents.
PartialArith partial_arith_from_json(const Json& j);
PartialBool partial_bool_from_json(const Json& j);
PartialCommand partial_command_from_json(const Json& j);
Command command_from_json(const Json& j);
PartialState partial_state_from_json(const Json& j);
State state_from_json(const Json& j);

/// Adds "schema_version" to an object document.
Json versioned(Json document);

} // namespace impslice::schema
