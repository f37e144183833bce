// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "impslice/kernels.hpp"
#include "impslice/lattice.hpp"
#include "impslice/trace.hpp"

namespace impslice {

// Exhaustive certification that forward and backward slicing of one
// derivation form a Galois connection between P = ↓(program, input) and
// Q = ↓output.

struct LawVerdict {
    std::string law;
    /// Pairs (or elements) examined; every one of them when the law holds.
    std::uint64_t checked = 0;
    /// First failing witness in enumeration order, both sides rendered.
    std::optional<std::string> counterexample;
    /// "all pairs", "covering pairs" or "elements".
    std::string method;

    [[nodiscard]] bool holds() const { return !counterexample; }
};

struct CheckReport {
    std::string derivation_id;
    std::uint64_t input_lattice_size = 0;
    std::uint64_t output_lattice_size = 0;
    std::vector<LawVerdict> laws;
    std::string kernel;
    double wall_seconds = 0;

    [[nodiscard]] bool all_hold() const;
    [[nodiscard]] const LawVerdict* find(const std::string& law) const;
};

struct CheckOptions {
    std::string derivation_id;
    std::uint64_t size_bound = default_size_bound;
    /// Permute both enumerations before checking.
    std::optional<std::uint64_t> shuffle_seed;
    std::optional<kernels::Backend> backend;
    /// Above this many input-lattice elements, forward monotonicity is checked
    /// on covering pairs instead of all pairs.
    std::uint64_t all_pairs_limit = 16384;
};

/// Law names, in report order.
inline constexpr const char* law_names[] = {
    "fwd_monotone", "bwd_monotone", "deflation", "inflation", "galois_equivalence",
    "minimality",   "fwd_bwd_fwd",  "bwd_fwd_bwd",
};

/// Throws SizeExceeded when |P| × |Q| is above the bound. P is enumerated
/// program-major, as by `enumerate_downset(program, input)`.
CheckReport check_connection(const Derivation& d, const CheckOptions& options = {});

/// The ⊑-least p in P with q ⊑ fwd(p), found by scanning P. Throws
/// SizeExceeded when |P| is above the bound, and the same errors as
/// `bwd_cmd` for criteria outside Q.
SliceOutcome oracle_bwd(const Derivation& d, const PartialState& criterion,
                        std::uint64_t size_bound = default_size_bound);

/// `oracle_bwd` of every q in Q, in the order of `enumerate_downset(output)`,
/// sharing one pass of forward slices over P.
std::vector<SliceOutcome> oracle_bwd_all(const Derivation& d, std::uint64_t size_bound = default_size_bound);

enum class PairView {
    /// Pairs over the full product lattice of programs and inputs.
    program_and_state,
    /// The program held at the complete program; only inputs vary.
    state_only,
};

struct MinimalPair {
    SliceOutcome input;
    PartialState output;
    bool operator==(const MinimalPair&) const = default;
};

/// The distinct (bwd(q), fwd(bwd(q))) over all q in Q, in order of first
/// appearance. Throws SizeExceeded when |Q| is above the bound.
std::vector<MinimalPair> minimal_pairs(const Derivation& d, std::uint64_t size_bound = default_size_bound,
                                       PairView view = PairView::program_and_state);

} // namespace impslice
