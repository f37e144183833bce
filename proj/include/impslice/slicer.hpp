// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "impslice/ast.hpp"
#include "impslice/lattice.hpp"
#include "impslice/trace.hpp"

namespace impslice {

/// A truth value or a hole.
using PartialTruth = std::optional<bool>;

// Forward slicing: evaluation of a partial program on a partial state along a
// recorded trace. Holes propagate through expressions; a hole command erases
// every variable the trace assigns. Throw Error(lattice_mismatch) when the
// partial term does not follow the trace's shape or the state's domain
// differs from the trace's.

PartialNat fwd_aexp(const ArithTrace& t, const PartialState& state, const PartialArith& a);
PartialTruth fwd_bexp(const BoolTrace& t, const PartialState& state, const PartialBool& b);
PartialState fwd_cmd(const CmdTrace& t, const PartialState& state, const PartialCommand& c);

/// Forward slice of a (program, input) prefix pair of `d`; both components
/// are checked against the derivation first.
PartialState forward_slice(const Derivation& d, const SliceOutcome& input);

// Backward slicing: the least partial program and input whose forward slice
// covers the criterion. Value criteria must equal the recorded result, else
// Error(criterion_mismatch).

template <class Expr> struct ExprSlice {
    PartialState demand;
    Expr expr;
};

ExprSlice<PartialArith> bwd_aexp(const ArithTrace& t, const StateDomain& domain, const PartialNat& criterion);
ExprSlice<PartialBool> bwd_bexp(const BoolTrace& t, const StateDomain& domain, const PartialTruth& criterion);

/// `criterion` must range over the trace's output domain (else
/// lattice_mismatch) and agree with the output values (else
/// criterion_mismatch).
SliceOutcome bwd_cmd(const CmdTrace& t, const PartialState& criterion);

inline SliceOutcome backward_slice(const Derivation& d, const PartialState& criterion) { return bwd_cmd(d.trace, criterion); }

} // namespace impslice
