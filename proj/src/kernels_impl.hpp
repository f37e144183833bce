// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "impslice/kernels.hpp"

namespace impslice::kernels {

namespace scalar {
PairScan monotone_scan(const MaskMatrix& dom, const MaskMatrix& img);
std::optional<std::size_t> first_non_subset(const MaskMatrix& a, const MaskMatrix& b);
AdjunctionScan adjunction_scan(const MaskMatrix& p, const MaskMatrix& fwd_p, const MaskMatrix& q, const MaskMatrix& bwd_q);
} // namespace scalar

namespace avx2 {
PairScan monotone_scan(const MaskMatrix& dom, const MaskMatrix& img);
std::optional<std::size_t> first_non_subset(const MaskMatrix& a, const MaskMatrix& b);
AdjunctionScan adjunction_scan(const MaskMatrix& p, const MaskMatrix& fwd_p, const MaskMatrix& q, const MaskMatrix& bwd_q);
} // namespace avx2

} // namespace impslice::kernels
