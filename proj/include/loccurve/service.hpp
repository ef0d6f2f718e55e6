#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "httplib.h"
#include "json.hpp"
#include "loccurve/dataset.hpp"
#include "loccurve/error.hpp"
#include "loccurve/response.hpp"

namespace loccurve::service {

/// Status and JSON body of one HTTP exchange. Handlers are pure functions of the request.
struct reply {
    int status;
    std::string body;
};

inline reply bad_request(const error& e) { return {400, error_json(e).dump()}; }

inline reply handle_health() { return {200, nlohmann::json{{"status", "ok"}}.dump()}; }

inline reply handle_curve(std::string_view body) {
    try {
        nlohmann::json parsed;
        try {
            parsed = nlohmann::json::parse(body);
        } catch (const nlohmann::json::parse_error& e) {
            throw error(error_code::parse_error, e.what());
        }
        return {200, render_curve_response(parse_curve_request(parsed))};
    } catch (const error& e) {
        return bad_request(e);
    } catch (const nlohmann::json::exception& e) {
        return bad_request(error(error_code::parse_error, e.what()));
    }
}

inline reply handle_fixture_list() {
    nlohmann::json names = nlohmann::json::array();
    for (const auto& f : fixtures()) {
        nlohmann::json presets = nlohmann::json::array();
        for (const auto& [name, x] : f.presets) presets.push_back(name);
        names.push_back({{"name", f.data.name}, {"size", f.data.size()}, {"presets", presets}});
    }
    return {200, nlohmann::json{{"fixtures", names}}.dump()};
}

inline reply handle_fixture(std::string_view name) {
    if (const fixture* f = find_fixture(name)) {
        return {200, to_json(*f).dump()};
    }
    return {404, nlohmann::json{{"error", "UnknownFixture"}, {"detail", "no fixture named '" + std::string(name) + "'"}}
                     .dump()};
}

/// Registers the JSON API on `server`; optionally serves a static UI bundle from `static_dir` at "/".
inline void install_routes(httplib::Server& server, const std::optional<std::string>& static_dir = std::nullopt) {
    const auto send = [](httplib::Response& res, const reply& r) {
        res.status = r.status;
        res.set_content(r.body, "application/json");
    };
    server.Get("/api/health", [send](const httplib::Request&, httplib::Response& res) { send(res, handle_health()); });
    server.Get("/api/fixtures",
               [send](const httplib::Request&, httplib::Response& res) { send(res, handle_fixture_list()); });
    server.Get(R"(/api/fixtures/([A-Za-z0-9_\-]+))", [send](const httplib::Request& req, httplib::Response& res) {
        send(res, handle_fixture(req.matches[1].str()));
    });
    server.Post("/api/curve",
                [send](const httplib::Request& req, httplib::Response& res) { send(res, handle_curve(req.body)); });
    server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
        res.status = 500;
        res.set_content(nlohmann::json{{"error", "Internal"}, {"detail", "unexpected server failure"}}.dump(),
                        "application/json");
    });
    if (static_dir) {
        server.set_mount_point("/", *static_dir);
    }
}

}  // namespace loccurve::service
