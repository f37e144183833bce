// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <httplib.h>

#include "impslice/service.hpp"

namespace impslice {

/// Registers the API endpoints of `service` on `server`. The handlers capture
/// `service` by reference; it must outlive the server.
void install_routes(httplib::Server& server, SliceService& service);

} // namespace impslice
