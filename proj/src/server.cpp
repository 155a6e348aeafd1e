#include "matchkit/server.hpp"

#define CPPHTTPLIB_LISTEN_BACKLOG 128
#include "httplib.h"

namespace matchkit {

struct Server::Impl {
    httplib::Server http;
    ServiceOptions options;
};

Server::Server(ServiceOptions options) : impl_(std::make_unique<Impl>())
{
    impl_->options = options;
    auto& http = impl_->http;
    http.set_payload_max_length(10 * 1024 * 1024);
    http.set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
    });
    http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "POST, OPTIONS"}});
    for (const char* path : {"/check-file", "/check-params", "/run-algorithms"}) {
        http.Post(path, [this, path](const httplib::Request& req, httplib::Response& res) {
            const ServiceResponse r = handle_request(path, req.body, impl_->options);
            res.status = r.status;
            res.set_content(r.body, "application/json");
        });
        http.Options(path, [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    }
}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port)
{
    if (port == 0)
        return impl_->http.bind_to_any_port(host);
    return impl_->http.bind_to_port(host, port) ? port : -1;
}

void Server::listen() { impl_->http.listen_after_bind(); }

void Server::stop()
{
    if (impl_ && impl_->http.is_running())
        impl_->http.stop();
}

}  // namespace matchkit
