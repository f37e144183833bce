// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "impslice/encoding.hpp"
#include "impslice/schema.hpp"
#include "impslice/syntax.hpp"
#include "impslice/trace.hpp"

namespace impslice {

/// An evaluated program. Immutable once created.
struct Session {
    std::string id;
    RenderedProgram rendered;
    Derivation derivation;
    Layout layout;
    std::chrono::system_clock::time_point created;
};

struct ServiceOptions {
    std::size_t capacity = 256;
    std::uint64_t default_bound = default_size_bound;
};

struct Response {
    int status = 200;
    schema::Json body;
};

/// Endpoint logic of the HTTP service, independent of any socket. Programs,
/// states and partial terms are accepted as concrete syntax (strings) or as
/// schema documents.
class SliceService {
  public:
    explicit SliceService(ServiceOptions options = {});
    ~SliceService();
    SliceService(const SliceService&) = delete;
    SliceService& operator=(const SliceService&) = delete;

    Response create_session(const schema::Json& body);
    Response backward(const std::string& id, const schema::Json& body);
    Response forward(const std::string& id, const schema::Json& body);
    Response check(const std::string& id, std::optional<std::uint64_t> bound);
    static Response health();

    [[nodiscard]] std::size_t session_count() const;

  private:
    std::shared_ptr<const Session> find(const std::string& id);

    ServiceOptions options_;
    mutable std::mutex mutex_;
    std::uint64_t next_id_ = 1;
    // Most recently used first.
    std::list<std::shared_ptr<const Session>> recent_;
    std::unordered_map<std::string, std::list<std::shared_ptr<const Session>>::iterator> by_id_;
};

/// Serves the API (and, when `static_dir` is non-empty, files from it) until
/// the process is stopped. Returns false if the port cannot be bound.
bool serve(SliceService& service, const std::string& host, int port, const std::string& static_dir);

} // namespace impslice
