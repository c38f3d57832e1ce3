#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <string>
#include <thread>

#include "httplib.h"

namespace reqcomp::testing {

// An httplib server on an ephemeral localhost port, stopped on destruction.
class StubServer {
 public:
  explicit StubServer(const std::function<void(httplib::Server&)>& routes) {
    routes(server_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }
  StubServer(const StubServer&) = delete;
  StubServer& operator=(const StubServer&) = delete;

  std::string url(const std::string& path = "") const { return "http://127.0.0.1:" + std::to_string(port_) + path; }
  int port() const { return port_; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

// Fake MediaWiki Action API backed by a JSON description:
//   {"search":     {phrase: [title, ...]},
//    "pages":      {title: {"extract": text, "categories": [...], "redirect_to": title}},
//    "categories": {"Category:X": {"pages": [...], "subcats": [...]}}}
// Served at /w/api.php. Counts requests.
class StubMediaWiki {
 public:
  explicit StubMediaWiki(const std::string& fixture_json);
  std::string api_url() const { return server_->url("/w/api.php"); }
  std::size_t requests() const { return requests_; }

 private:
  std::atomic<std::size_t> requests_{0};
  std::unique_ptr<StubServer> server_;
};

}  // namespace reqcomp::testing
