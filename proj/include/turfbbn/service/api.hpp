#pragma once

#include "turfbbn/core/network_io.hpp"
#include "turfbbn/pipeline/scenarios.hpp"

#include "json.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace turfbbn::service {

struct ServiceOptions {
    std::uint64_t seed = 1;
    std::size_t samples = pipeline::kDefaultScenarioSamples;
};

struct ApiResponse {
    int status = 200;
    nlohmann::json body;
};

/// Request handlers behind the HTTP routes. Stateless apart from the loaded
/// network, so one instance serves concurrent requests; every sampled answer
/// uses its own random stream seeded from the request (or the default seed).
///
///   GET  /network    variables, states, edges with strengths
///   POST /query      {evidence, event, n_samples?, seed?}
///   POST /reverse    {driver, event}
///   GET  /scenarios  shipped presets in /query request shape
///
/// Invalid requests get 400 with the offending field; impossible evidence
/// gets 422.
class QueryService {
public:
    QueryService(NetworkDocument document, std::vector<pipeline::Scenario> presets, ServiceOptions options = {});

    ApiResponse network() const;
    ApiResponse query(std::string_view request_body) const;
    ApiResponse reverse(std::string_view request_body) const;
    ApiResponse scenarios() const;

    const Network& model() const noexcept { return document_.network; }

private:
    NetworkDocument document_;
    std::vector<pipeline::Scenario> presets_;
    ServiceOptions options_;
};

/// Runs the routes above on host:port until stop() is called.
class HttpServer {
public:
    explicit HttpServer(const QueryService& service);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds; port 0 picks a free port. Returns the bound port or -1.
    int bind(const std::string& host, int port);
    /// Blocks serving requests.
    void listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace turfbbn::service
