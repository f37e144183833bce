// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdlib>
#include <random>

#include "impslice/kernels.hpp"

using namespace impslice;
using namespace impslice::kernels;

namespace {

// Bit-by-bit reference, independent of either kernel.
bool naive_subset(const MaskMatrix& a, std::size_t i, const MaskMatrix& b, std::size_t j) {
    for (std::size_t bit = 0; bit < a.bits(); ++bit) {
        if (a.test(i, bit) && !b.test(j, bit)) {
            return false;
        }
    }
    return true;
}

PairScan naive_monotone(const MaskMatrix& dom, const MaskMatrix& img) {
    PairScan out;
    for (std::size_t i = 0; i < dom.rows(); ++i) {
        for (std::size_t j = 0; j < dom.rows(); ++j) {
            if (naive_subset(dom, i, dom, j)) {
                ++out.related;
                if (!out.violation && !naive_subset(img, i, img, j)) {
                    out.violation = Violation{i, j};
                }
            }
        }
    }
    return out;
}

AdjunctionScan naive_adjunction(const MaskMatrix& p, const MaskMatrix& fwd, const MaskMatrix& q, const MaskMatrix& bwd) {
    AdjunctionScan out;
    for (std::size_t i = 0; i < p.rows(); ++i) {
        for (std::size_t j = 0; j < q.rows(); ++j) {
            const bool left = naive_subset(bwd, j, p, i);
            const bool right = naive_subset(q, j, fwd, i);
            if (left && !right && !out.unsound) {
                out.unsound = Violation{i, j};
            }
            if (right && !left && !out.not_least) {
                out.not_least = Violation{i, j};
            }
        }
    }
    return out;
}

// Sparse random rows so that subset relations actually occur.
MaskMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t bits, double density) {
    MaskMatrix m(rows, bits);
    std::bernoulli_distribution on(density);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t b = 0; b < bits; ++b) {
            if (on(rng)) {
                m.set(r, b);
            }
        }
    }
    return m;
}

std::vector<Backend> backends() {
    std::vector<Backend> out{Backend::scalar};
    if (avx2_supported()) {
        out.push_back(Backend::avx2);
    }
    return out;
}

} // namespace

TEST_CASE("backend selection") {
    CHECK(std::string(to_string(Backend::scalar)) == "scalar");
    CHECK(std::string(to_string(Backend::avx2)) == "avx2");
    CHECK(usable(Backend::scalar) == Backend::scalar);
    CHECK(usable(Backend::avx2) == (avx2_supported() ? Backend::avx2 : Backend::scalar));
    const char* forced = std::getenv("IMPSLICE_KERNEL");
    if (forced != nullptr && std::string(forced) == "scalar") {
        CHECK(default_backend() == Backend::scalar);
    } else {
        CHECK(default_backend() == (avx2_supported() ? Backend::avx2 : Backend::scalar));
    }
}

TEST_CASE("kernels agree with the bitwise reference across widths and tails") {
    std::mt19937_64 rng(1234);
    // One-word rows, four-word rows and eight-word rows; row counts hit every
    // remainder modulo the four-row vector block.
    for (const std::size_t bits : {1U, 7U, 63U, 64U, 65U, 200U, 256U, 300U, 511U}) {
        for (const std::size_t rows : {0U, 1U, 2U, 3U, 4U, 5U, 9U, 17U, 30U}) {
            for (const double density : {0.02, 0.1, 0.5}) {
                const MaskMatrix dom = random_matrix(rng, rows, bits, density);
                const MaskMatrix img = random_matrix(rng, rows, bits, density);
                const MaskMatrix q = random_matrix(rng, rows / 2 + 1, bits, density);
                const MaskMatrix bwd = random_matrix(rng, rows / 2 + 1, bits, density);
                const PairScan want = naive_monotone(dom, img);
                const AdjunctionScan want_adj = naive_adjunction(dom, img, q, bwd);
                std::optional<std::size_t> want_first;
                for (std::size_t r = 0; r < rows && !want_first; ++r) {
                    if (!naive_subset(dom, r, img, r)) {
                        want_first = r;
                    }
                }
                for (const Backend b : backends()) {
                    CAPTURE(bits);
                    CAPTURE(rows);
                    CAPTURE(to_string(b));
                    CHECK(monotone_scan(dom, img, b) == want);
                    CHECK(adjunction_scan(dom, img, q, bwd, b) == want_adj);
                    CHECK(first_non_subset(dom, img, b) == want_first);
                    CHECK(first_non_subset(dom, dom, b) == std::nullopt);
                }
            }
        }
    }
}

TEST_CASE("kernels on related chains report no violation") {
    // A chain: row i keeps the first i bits, images likewise.
    for (const std::size_t bits : {40U, 130U}) {
        MaskMatrix chain(bits + 1, bits);
        for (std::size_t r = 0; r <= bits; ++r) {
            for (std::size_t b = 0; b < r; ++b) {
                chain.set(r, b);
            }
        }
        for (const Backend b : backends()) {
            const PairScan scan = monotone_scan(chain, chain, b);
            CHECK(scan.related == (bits + 1) * (bits + 2) / 2);
            CHECK(!scan.violation);
        }
    }
}
