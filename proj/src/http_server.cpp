#include "ottr/service.hpp"

#include "httplib.h"

namespace ottr {

HttpServer::HttpServer(Service& service) : server_(std::make_unique<httplib::Server>()) {
    auto dispatch = [&service](const httplib::Request& req, httplib::Response& res) {
        std::map<std::string, std::string> query;
        for (const auto& [k, v] : req.params) query.emplace(k, v);
        std::string target = req.target.empty() ? req.path : req.target;
        Response r = service.handle(req.method, target, req.body, query);
        res.status = r.status;
        if (r.content_type == "application/json") res.set_content(r.body.dump(2), r.content_type);
        else res.set_content(r.text, r.content_type);
    };
    server_->Get(".*", dispatch);
    server_->Post(".*", dispatch);
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return server_->bind_to_any_port(host);
    return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpServer::run() { return server_->listen_after_bind(); }

void HttpServer::stop() { server_->stop(); }

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

bool run_http_server(Service& service, const std::string& host, int port) {
    HttpServer server(service);
    if (server.bind(host, port) < 0) return false;
    return server.run();
}

}  // namespace ottr
