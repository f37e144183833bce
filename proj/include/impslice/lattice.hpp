// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "impslice/ast.hpp"

namespace impslice {

inline constexpr std::uint64_t default_size_bound = 65536;

/// Element of the product lattice of partial programs and partial input
/// states; also the result of a backward slice.
struct SliceOutcome {
    PartialState input_slice;
    PartialCommand program_slice;
    bool operator==(const SliceOutcome&) const = default;
};

// Prefix order with the hole as bottom. Shape mismatches compare false.
// States are comparable only over identical domains (same names, same order).
bool leq(const PartialArith& a, const PartialArith& b);
bool leq(const PartialBool& a, const PartialBool& b);
bool leq(const PartialCommand& a, const PartialCommand& b);
bool leq(const PartialNat& a, const PartialNat& b);
bool leq(const PartialState& a, const PartialState& b);
bool leq(const SliceOutcome& a, const SliceOutcome& b);

// Least upper bound. Throws Error(join_error) when the operands have no
// common upper bound.
PartialArith join(const PartialArith& a, const PartialArith& b);
PartialBool join(const PartialBool& a, const PartialBool& b);
PartialCommand join(const PartialCommand& a, const PartialCommand& b);
PartialNat join(const PartialNat& a, const PartialNat& b);
PartialState join(const PartialState& a, const PartialState& b);
SliceOutcome join(const SliceOutcome& a, const SliceOutcome& b);

/// Evidence that `element` lies in the downset of `top`. Only
/// `check_prefix` constructs one.
template <class PartialT, class TotalT> class PrefixWitness {
  public:
    [[nodiscard]] const PartialT& element() const { return element_; }
    [[nodiscard]] const TotalT& top() const { return top_; }

  private:
    PrefixWitness(PartialT element, TotalT top) : element_(std::move(element)), top_(std::move(top)) {}
    PartialT element_;
    TotalT top_;

    friend PrefixWitness<PartialArith, ArithExpr> check_prefix(const PartialArith&, const ArithExpr&);
    friend PrefixWitness<PartialBool, BoolExpr> check_prefix(const PartialBool&, const BoolExpr&);
    friend PrefixWitness<PartialCommand, Command> check_prefix(const PartialCommand&, const Command&);
    friend PrefixWitness<PartialState, State> check_prefix(const PartialState&, const State&);
};

/// `element` ⊑ partialize(`top`).
inline bool is_prefix_of(const PartialCommand& element, const Command& top) { return leq(element, partialize(top)); }
inline bool is_prefix_of(const PartialState& element, const State& top) { return leq(element, partialize(top)); }

// Throw Error(lattice_mismatch) naming the first differing position.
PrefixWitness<PartialArith, ArithExpr> check_prefix(const PartialArith& element, const ArithExpr& top);
PrefixWitness<PartialBool, BoolExpr> check_prefix(const PartialBool& element, const BoolExpr& top);
PrefixWitness<PartialCommand, Command> check_prefix(const PartialCommand& element, const Command& top);
PrefixWitness<PartialState, State> check_prefix(const PartialState& element, const State& top);

// Cardinality of the downset via the product recurrence, saturating at
// UINT64_MAX: leaves count 2, an inner node 1 + the product over its children,
// states 2^|dom|.
std::uint64_t downset_size(const ArithExpr& top);
std::uint64_t downset_size(const BoolExpr& top);
std::uint64_t downset_size(const Command& top);
std::uint64_t downset_size(const State& top);
std::uint64_t downset_size(const Command& program, const State& input);

/// Saturating multiplication used by the size recurrences.
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);

// Every element of the downset exactly once, holes first, children varied
// left to right with the leftmost child outermost. Throws SizeExceeded when
// the cardinality is above `bound`.
std::vector<PartialArith> enumerate_downset(const ArithExpr& top, std::uint64_t bound = default_size_bound);
std::vector<PartialBool> enumerate_downset(const BoolExpr& top, std::uint64_t bound = default_size_bound);
std::vector<PartialCommand> enumerate_downset(const Command& top, std::uint64_t bound = default_size_bound);
std::vector<PartialState> enumerate_downset(const State& top, std::uint64_t bound = default_size_bound);

/// Product downset of (program, input); the program component varies slowest.
std::vector<SliceOutcome> enumerate_downset(const Command& program, const State& input,
                                            std::uint64_t bound = default_size_bound);

} // namespace impslice
