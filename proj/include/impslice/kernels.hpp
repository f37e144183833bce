// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "impslice/encoding.hpp"

namespace impslice::kernels {

// Subset scans over encoded downsets. Each scan has a scalar reference and an
// AVX2 variant that must agree exactly, including which violation is first.

enum class Backend { scalar, avx2 };

const char* to_string(Backend backend);

bool avx2_supported();

/// AVX2 when the CPU has it, unless IMPSLICE_KERNEL=scalar is set.
Backend default_backend();

/// Falls back to scalar when `wanted` is unavailable.
Backend usable(Backend wanted);

struct Violation {
    std::size_t first = 0;
    std::size_t second = 0;
    bool operator==(const Violation&) const = default;
};

struct PairScan {
    std::uint64_t related = 0;
    std::optional<Violation> violation;
    bool operator==(const PairScan&) const = default;
};

/// Over all (i, j) with dom_i ⊆ dom_j: counts them and reports the first, in
/// i-major order, where img_i ⊄ img_j.
PairScan monotone_scan(const MaskMatrix& dom, const MaskMatrix& img, Backend backend);

/// First row i with a_i ⊄ b_i.
std::optional<std::size_t> first_non_subset(const MaskMatrix& a, const MaskMatrix& b, Backend backend);

/// Both directions of `bwd(q) ⊆ p  <=>  q ⊆ fwd(p)` over all (p, q), p-major.
struct AdjunctionScan {
    /// bwd(q) ⊆ p but q ⊄ fwd(p).
    std::optional<Violation> unsound;
    /// q ⊆ fwd(p) but bwd(q) ⊄ p.
    std::optional<Violation> not_least;
    bool operator==(const AdjunctionScan&) const = default;
};

AdjunctionScan adjunction_scan(const MaskMatrix& p, const MaskMatrix& fwd_p, const MaskMatrix& q,
                               const MaskMatrix& bwd_q, Backend backend);

} // namespace impslice::kernels
