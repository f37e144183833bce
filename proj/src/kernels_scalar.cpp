// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#include "kernels_impl.hpp"

namespace impslice::kernels::scalar {

namespace {

bool subset(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
    for (std::size_t w = 0; w < words; ++w) {
        if ((a[w] & ~b[w]) != 0) {
            return false;
        }
    }
    return true;
}

} // namespace

PairScan monotone_scan(const MaskMatrix& dom, const MaskMatrix& img) {
    PairScan scan;
    const std::size_t n = dom.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!subset(dom.row(i), dom.row(j), dom.words())) {
                continue;
            }
            ++scan.related;
            if (!scan.violation && !subset(img.row(i), img.row(j), img.words())) {
                scan.violation = Violation{i, j};
            }
        }
    }
    return scan;
}

std::optional<std::size_t> first_non_subset(const MaskMatrix& a, const MaskMatrix& b) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (!subset(a.row(i), b.row(i), a.words())) {
            return i;
        }
    }
    return std::nullopt;
}

AdjunctionScan adjunction_scan(const MaskMatrix& p, const MaskMatrix& fwd_p, const MaskMatrix& q, const MaskMatrix& bwd_q) {
    AdjunctionScan scan;
    for (std::size_t i = 0; i < p.rows(); ++i) {
        for (std::size_t j = 0; j < q.rows(); ++j) {
            const bool below = subset(bwd_q.row(j), p.row(i), p.words());
            const bool covered = subset(q.row(j), fwd_p.row(i), q.words());
            if (below && !covered && !scan.unsound) {
                scan.unsound = Violation{i, j};
            }
            if (covered && !below && !scan.not_least) {
                scan.not_least = Violation{i, j};
            }
        }
        if (scan.unsound && scan.not_least) {
            break;
        }
    }
    return scan;
}

} // namespace impslice::kernels::scalar
