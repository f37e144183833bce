// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace impslice {

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

} // namespace impslice
