#pragma once

#include <functional>
#include <memory>
#include <string>

#include "matchkit/service.hpp"

namespace matchkit {

/// HTTP front end for the service endpoints. Requests are handled
/// concurrently; bodies above 10 MB are refused.
class Server {
public:
    explicit Server(ServiceOptions options = {});
    ~Server();

    /// Binds to host:port (port 0 picks a free one). Returns the bound port,
    /// or -1 when binding fails.
    int bind(const std::string& host, int port);
    /// Serves until stop() is called.
    void listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace matchkit
