// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
// Built with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <bit>

#include "kernels_impl.hpp"

namespace impslice::kernels::avx2 {

namespace {

// Rows wider than one word are padded to whole lanes.
bool subset(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
    if (words == 1) {
        return (a[0] & ~b[0]) == 0;
    }
    for (std::size_t w = 0; w < words; w += 4) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + w));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + w));
        if (_mm256_testc_si256(vb, va) == 0) {
            return false;
        }
    }
    return true;
}

// Lane k set when (x_k & ~y_k) == 0, i.e. x_k ⊆ y_k.
unsigned subset_lanes(__m256i x, __m256i y) {
    const __m256i rest = _mm256_andnot_si256(y, x);
    const __m256i zero = _mm256_cmpeq_epi64(rest, _mm256_setzero_si256());
    return static_cast<unsigned>(_mm256_movemask_pd(_mm256_castsi256_pd(zero)));
}

__m256i load4(const MaskMatrix& m, std::size_t row) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(m.row(row)));
}

// One-word rows: compare a fixed row against four consecutive rows at once.
PairScan monotone_narrow(const MaskMatrix& dom, const MaskMatrix& img) {
    PairScan scan;
    const std::size_t n = dom.rows();
    const std::size_t blocked = n - n % 4;
    for (std::size_t i = 0; i < n; ++i) {
        const __m256i di = _mm256_set1_epi64x(static_cast<long long>(dom.row(i)[0]));
        const __m256i ii = _mm256_set1_epi64x(static_cast<long long>(img.row(i)[0]));
        std::size_t j = 0;
        for (; j < blocked; j += 4) {
            const unsigned related = subset_lanes(di, load4(dom, j));
            scan.related += static_cast<unsigned>(std::popcount(related));
            if (!scan.violation) {
                const unsigned bad = related & ~subset_lanes(ii, load4(img, j)) & 0xFU;
                if (bad != 0) {
                    scan.violation = Violation{i, j + static_cast<std::size_t>(std::countr_zero(bad))};
                }
            }
        }
        for (; j < n; ++j) {
            if ((dom.row(i)[0] & ~dom.row(j)[0]) != 0) {
                continue;
            }
            ++scan.related;
            if (!scan.violation && (img.row(i)[0] & ~img.row(j)[0]) != 0) {
                scan.violation = Violation{i, j};
            }
        }
    }
    return scan;
}

} // namespace

PairScan monotone_scan(const MaskMatrix& dom, const MaskMatrix& img) {
    if (dom.words() == 1 && img.words() == 1) {
        return monotone_narrow(dom, img);
    }
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
    const std::size_t n = a.rows();
    std::size_t i = 0;
    if (a.words() == 1) {
        for (; i + 4 <= n; i += 4) {
            const unsigned bad = ~subset_lanes(load4(a, i), load4(b, i)) & 0xFU;
            if (bad != 0) {
                return i + static_cast<std::size_t>(std::countr_zero(bad));
            }
        }
    }
    for (; i < n; ++i) {
        if (!subset(a.row(i), b.row(i), a.words())) {
            return i;
        }
    }
    return std::nullopt;
}

AdjunctionScan adjunction_scan(const MaskMatrix& p, const MaskMatrix& fwd_p, const MaskMatrix& q, const MaskMatrix& bwd_q) {
    AdjunctionScan scan;
    const std::size_t m = q.rows();
    const bool narrow = p.words() == 1 && q.words() == 1;
    const std::size_t blocked = narrow ? m - m % 4 : 0;
    for (std::size_t i = 0; i < p.rows(); ++i) {
        std::size_t j = 0;
        if (narrow) {
            const __m256i pi = _mm256_set1_epi64x(static_cast<long long>(p.row(i)[0]));
            const __m256i fi = _mm256_set1_epi64x(static_cast<long long>(fwd_p.row(i)[0]));
            for (; j < blocked; j += 4) {
                const unsigned below = subset_lanes(load4(bwd_q, j), pi);
                const unsigned covered = subset_lanes(load4(q, j), fi);
                const unsigned unsound = below & ~covered & 0xFU;
                const unsigned not_least = covered & ~below & 0xFU;
                if (unsound != 0 && !scan.unsound) {
                    scan.unsound = Violation{i, j + static_cast<std::size_t>(std::countr_zero(unsound))};
                }
                if (not_least != 0 && !scan.not_least) {
                    scan.not_least = Violation{i, j + static_cast<std::size_t>(std::countr_zero(not_least))};
                }
            }
        }
        for (; j < m; ++j) {
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

} // namespace impslice::kernels::avx2
