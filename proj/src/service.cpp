// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#include "impslice/service.hpp"

#include "impslice/service_http.hpp"

#include <charconv>

#include "impslice/error.hpp"
#include "impslice/oracle.hpp"
#include "impslice/slicer.hpp"
#include "impslice/stack.hpp"

namespace impslice {

namespace {

using schema::Json;

int http_status(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::parse:
    case ErrorKind::duplicate_variable:
        return 400;
    default:
        return 422;
    }
}

Response error_response(int status, const Json& error) { return {status, schema::versioned(error)}; }

Response not_found(const std::string& id) {
    return error_response(404, Json{{"error", "unknown_session"}, {"message", "no session '" + id + "'"}});
}

const Json& required(const Json& body, const char* name) {
    if (!body.is_object() || !body.contains(name)) {
        throw Error(ErrorKind::parse, std::string("request body lacks '") + name + "'");
    }
    return body.at(name);
}

Command program_of(const Json& j) { return j.is_string() ? parse_command(j.get<std::string>()) : schema::command_from_json(j); }

PartialCommand partial_program_of(const Json& j) {
    return j.is_string() ? parse_partial_command(j.get<std::string>()) : schema::partial_command_from_json(j);
}

State state_of(const Json& j) { return j.is_string() ? parse_state(j.get<std::string>()) : schema::state_from_json(j); }

PartialState partial_state_of(const Json& j) {
    return j.is_string() ? parse_partial_state(j.get<std::string>()) : schema::partial_state_from_json(j);
}

// Runs an endpoint on a large stack and maps library errors to statuses.
template <class F> Response guarded(F&& endpoint) {
    return with_large_stack([&]() -> Response {
        try {
            return endpoint();
        } catch (const Error& e) {
            return error_response(http_status(e.kind()), schema::to_json(e));
        } catch (const Json::exception& e) {
            return error_response(400, Json{{"error", "parse"}, {"message", e.what()}});
        }
    });
}

} // namespace

SliceService::SliceService(ServiceOptions options) : options_(options) {}

SliceService::~SliceService() {
    // Releasing a long trace recurses once per loop iteration.
    with_large_stack([this] {
        std::lock_guard lock(mutex_);
        by_id_.clear();
        recent_.clear();
    });
}

std::size_t SliceService::session_count() const {
    std::lock_guard lock(mutex_);
    return recent_.size();
}

std::shared_ptr<const Session> SliceService::find(const std::string& id) {
    std::lock_guard lock(mutex_);
    const auto it = by_id_.find(id);
    if (it == by_id_.end()) {
        return nullptr;
    }
    recent_.splice(recent_.begin(), recent_, it->second);
    return *it->second;
}

Response SliceService::create_session(const Json& body) {
    return guarded([&]() -> Response {
        const Command program = program_of(required(body, "program"));
        const State input = state_of(required(body, "state"));
        std::uint64_t fuel = default_fuel;
        if (body.contains("fuel")) {
            const Json& f = body.at("fuel");
            // Documents built in code store small integers as signed.
            const bool positive = f.is_number_unsigned() ? f.get<std::uint64_t>() > 0
                                                         : f.is_number_integer() && f.get<std::int64_t>() > 0;
            if (!positive) {
                throw Error(ErrorKind::parse, "fuel must be a positive integer");
            }
            fuel = f.get<std::uint64_t>();
        }
        Derivation d = eval_cmd(input, program, fuel);
        const TraceStats stats = trace_stats(d);
        std::shared_ptr<const Session> evicted;
        std::shared_ptr<const Session> session;
        {
            std::lock_guard lock(mutex_);
            auto made = std::make_shared<Session>(Session{"s" + std::to_string(next_id_++), render_with_spans(program),
                                                          std::move(d), Layout(program, input.domain()),
                                                          std::chrono::system_clock::now()});
            session = made;
            recent_.push_front(session);
            by_id_[session->id] = recent_.begin();
            if (recent_.size() > options_.capacity) {
                evicted = recent_.back();
                by_id_.erase(evicted->id);
                recent_.pop_back();
            }
        }
        return {200, schema::versioned(Json{{"session_id", session->id},
                                            {"program_text", session->rendered.text},
                                            {"output_state", schema::to_json(session->derivation.output)},
                                            {"trace_summary", schema::to_json(stats)}})};
    });
}

Response SliceService::backward(const std::string& id, const Json& body) {
    return guarded([&]() -> Response {
        const auto session = find(id);
        if (!session) {
            return not_found(id);
        }
        const PartialState criterion = partial_state_of(required(body, "criterion"));
        const SliceOutcome slice = backward_slice(session->derivation, criterion);
        Json holes = Json::array();
        for (const std::size_t node : session->layout.hole_roots(slice.program_slice)) {
            const Span span = session->rendered.node_spans.at(node);
            holes.push_back(Json{{"begin", span.begin}, {"end", span.end}});
        }
        return {200, schema::versioned(Json{{"input_slice", schema::to_json(slice.input_slice)},
                                            {"program_slice", schema::to_json(slice.program_slice)},
                                            {"program_slice_text", render_pretty(slice.program_slice)},
                                            {"holes", holes}})};
    });
}

Response SliceService::forward(const std::string& id, const Json& body) {
    return guarded([&]() -> Response {
        const auto session = find(id);
        if (!session) {
            return not_found(id);
        }
        const PartialCommand program = partial_program_of(required(body, "partial_program"));
        const PartialState state = partial_state_of(required(body, "partial_state"));
        const PartialState out = forward_slice(session->derivation, SliceOutcome{state, program});
        return {200, schema::versioned(Json{{"partial_output", schema::to_json(out)}})};
    });
}

Response SliceService::check(const std::string& id, std::optional<std::uint64_t> bound) {
    return guarded([&]() -> Response {
        const auto session = find(id);
        if (!session) {
            return not_found(id);
        }
        CheckOptions options;
        options.derivation_id = session->id;
        options.size_bound = bound.value_or(options_.default_bound);
        return {200, schema::versioned(schema::to_json(check_connection(session->derivation, options)))};
    });
}

Response SliceService::health() { return {200, Json{{"status", "ok"}}}; }

void install_routes(httplib::Server& server, SliceService& service) {
    const auto reply = [](httplib::Response& res, const Response& r) {
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };
    const auto json_body = [](const httplib::Request& req) { return Json::parse(req.body, nullptr, false); };
    const auto bad_json = [reply](httplib::Response& res) {
        reply(res, error_response(400, Json{{"error", "parse"}, {"message", "request body is not JSON"}}));
    };

    server.Get("/health", [reply](const httplib::Request&, httplib::Response& res) { reply(res, SliceService::health()); });
    server.Post("/sessions", [&service, reply, json_body, bad_json](const httplib::Request& req, httplib::Response& res) {
        const Json body = json_body(req);
        body.is_discarded() ? bad_json(res) : reply(res, service.create_session(body));
    });
    server.Post(R"(/sessions/([^/]+)/bwd)", [&service, reply, json_body, bad_json](const httplib::Request& req, httplib::Response& res) {
        const Json body = json_body(req);
        body.is_discarded() ? bad_json(res) : reply(res, service.backward(req.matches[1], body));
    });
    server.Post(R"(/sessions/([^/]+)/fwd)", [&service, reply, json_body, bad_json](const httplib::Request& req, httplib::Response& res) {
        const Json body = json_body(req);
        body.is_discarded() ? bad_json(res) : reply(res, service.forward(req.matches[1], body));
    });
    server.Get(R"(/sessions/([^/]+)/check)", [&service, reply](const httplib::Request& req, httplib::Response& res) {
        std::optional<std::uint64_t> bound;
        if (req.has_param("bound")) {
            const std::string text = req.get_param_value("bound");
            std::uint64_t value = 0;
            const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc{} || end != text.data() + text.size()) {
                reply(res, error_response(400, Json{{"error", "parse"}, {"message", "bound must be a natural number"}}));
                return;
            }
            bound = value;
        }
        reply(res, service.check(req.matches[1], bound));
    });
}

bool serve(SliceService& service, const std::string& host, int port, const std::string& static_dir) {
    httplib::Server server;
    install_routes(server, service);
    if (!static_dir.empty() && !server.set_mount_point("/", static_dir)) {
        return false;
    }
    return server.listen(host, port);
}

} // namespace impslice
