#include <stdexcept>

#include "httplib.h"
#include "qcn/elicit.hpp"

namespace qcn::elicit {

struct Server::Impl {
  ServerOptions options;
  Service service;
  httplib::Server http;

  explicit Impl(ServerOptions o) : options(std::move(o)), service(options.snapshot_dir) {
    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
      const Response r = service.handle(req.method, req.path, req.body);
      res.status = r.status;
      res.set_content(r.body, "application/json");
    };
    const char* pattern = R"(/.*)";
    http.Get(pattern, forward);
    http.Post(pattern, forward);
    http.Delete(pattern, forward);
    http.Put(pattern, forward);
    if (options.cors) {
      http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
      http.Options(pattern, [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    }
  }
};

Server::Server(ServerOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}
Server::~Server() { stop(); }

int Server::bind() {
  const auto& o = impl_->options;
  if (o.port == 0) {
    const int port = impl_->http.bind_to_any_port(o.host);
    if (port < 0) throw std::runtime_error("cannot bind to " + o.host);
    return port;
  }
  if (!impl_->http.bind_to_port(o.host, o.port))
    throw std::runtime_error("cannot bind to " + o.host + ":" + std::to_string(o.port));
  return o.port;
}

void Server::serve() { impl_->http.listen_after_bind(); }
void Server::stop() {
  if (impl_) impl_->http.stop();
}
void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace qcn::elicit
