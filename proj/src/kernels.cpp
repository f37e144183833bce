// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace impslice::kernels {

const char* to_string(Backend backend) { return backend == Backend::avx2 ? "avx2" : "scalar"; }

bool avx2_supported() {
#if defined(IMPSLICE_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

Backend default_backend() {
    const char* forced = std::getenv("IMPSLICE_KERNEL");
    if (forced != nullptr && std::string_view(forced) == "scalar") {
        return Backend::scalar;
    }
    return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

Backend usable(Backend wanted) { return wanted == Backend::avx2 && !avx2_supported() ? Backend::scalar : wanted; }

#if defined(IMPSLICE_HAVE_AVX2)
#define IMPSLICE_DISPATCH(fn, ...) (usable(backend) == Backend::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define IMPSLICE_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

PairScan monotone_scan(const MaskMatrix& dom, const MaskMatrix& img, Backend backend) {
    return IMPSLICE_DISPATCH(monotone_scan, dom, img);
}

std::optional<std::size_t> first_non_subset(const MaskMatrix& a, const MaskMatrix& b, Backend backend) {
    return IMPSLICE_DISPATCH(first_non_subset, a, b);
}

AdjunctionScan adjunction_scan(const MaskMatrix& p, const MaskMatrix& fwd_p, const MaskMatrix& q,
                               const MaskMatrix& bwd_q, Backend backend) {
    return IMPSLICE_DISPATCH(adjunction_scan, p, fwd_p, q, bwd_q);
}

} // namespace impslice::kernels
