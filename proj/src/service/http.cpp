#include "turfbbn/service/api.hpp"

#include "httplib.h"

namespace turfbbn::service {

struct HttpServer::Impl {
    httplib::Server server;
};

namespace {

void reply(httplib::Response& res, const ApiResponse& api) {
    res.status = api.status;
    res.set_content(api.body.dump(), "application/json");
}

}  // namespace

HttpServer::HttpServer(const QueryService& service) : impl_(std::make_unique<Impl>()) {
    auto& svr = impl_->server;
    const QueryService* s = &service;
    svr.Get("/network", [s](const httplib::Request&, httplib::Response& res) { reply(res, s->network()); });
    svr.Get("/scenarios", [s](const httplib::Request&, httplib::Response& res) { reply(res, s->scenarios()); });
    svr.Post("/query", [s](const httplib::Request& req, httplib::Response& res) { reply(res, s->query(req.body)); });
    svr.Post("/reverse", [s](const httplib::Request& req, httplib::Response& res) { reply(res, s->reverse(req.body)); });
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace turfbbn::service
