#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <doctest.h>

#include <atomic>
#include <chrono>
#include <json.hpp>
#include <thread>

#include "sheetcomp/error.hpp"
#include "sheetcomp/llm_client.hpp"

using namespace sheetcomp;
using namespace std::chrono_literals;

namespace {

class CountingFailures final : public LlmClient {
 public:
  explicit CountingFailures(int failures) : failures_(failures) {}
  std::string complete(const LlmRequest&) override {
    ++calls;
    if (failures_-- > 0) throw TransportError("down");
    return "ok";
  }
  int calls = 0;

 private:
  int failures_;
};

// Local endpoint that fails the first `failures` requests with `status`.
class TestServer {
 public:
  TestServer(int failures, int status) : failures_(failures), status_(status) {
    server_.Post("/v1/complete", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits;
      last_auth = req.get_header_value("Authorization");
      last_body = req.body;
      if (failures_-- > 0) {
        res.status = status_;
        res.set_content("busy", "text/plain");
        return;
      }
      auto body = nlohmann::json::parse(req.body);
      nlohmann::json reply = {{"text", "echo:" + body["prompt"].get<std::string>()}};
      res.set_content(reply.dump(), "application/json");
    });
    server_.Post("/bad", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("{\"choices\":[]}", "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~TestServer() {
    server_.stop();
    thread_.join();
  }
  std::string url(const std::string& path) const { return "http://127.0.0.1:" + std::to_string(port_) + path; }

  std::atomic<int> hits{0};
  std::string last_auth;
  std::string last_body;

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> failures_;
  int status_;
};

}  // namespace

TEST_CASE("request defaults") {
  LlmRequest r;
  CHECK(r.temperature == 0.0);
  CHECK(r.max_tokens == 300);
  CHECK(r.top_p == 0.95);
  RetryPolicy p;
  CHECK(p.attempts == 3);
  CHECK(p.base_delay == 500ms);
}

TEST_CASE("retry recovers from transient failures") {
  RetryPolicy fast{3, 1ms};
  CountingFailures two(2);
  CHECK(complete_with_retry(two, {}, fast) == "ok");
  CHECK(two.calls == 3);

  CountingFailures three(3);
  CHECK_THROWS_AS(complete_with_retry(three, {}, fast), TransportError);
  CHECK(three.calls == 3);

  CountingFailures once(1);
  CHECK_THROWS_AS(complete_with_retry(once, {}, RetryPolicy{1, 1ms}), TransportError);
  CHECK(once.calls == 1);
}

TEST_CASE("retry backs off exponentially") {
  CountingFailures two(2);
  auto start = std::chrono::steady_clock::now();
  complete_with_retry(two, {}, RetryPolicy{3, 20ms});
  CHECK(std::chrono::steady_clock::now() - start >= 60ms);
}

TEST_CASE("non-transport errors are not retried") {
  int calls = 0;
  FunctionClient fn([&](const LlmRequest&) -> std::string {
    ++calls;
    throw PipelineError("bad request");
  });
  CHECK_THROWS_AS(complete_with_retry(fn, {}, RetryPolicy{3, 1ms}), PipelineError);
  CHECK(calls == 1);
}

TEST_CASE("scripted client") {
  ScriptedClient client({"first", "second"});
  LlmRequest r;
  r.prompt = "p1";
  CHECK(client.complete(r) == "first");
  client.fail_next(1);
  CHECK_THROWS_AS(client.complete(r), TransportError);
  r.prompt = "p2";
  CHECK(client.complete(r) == "second");
  CHECK_THROWS_AS(client.complete(r), PipelineError);
  CHECK(client.calls() == 4);
  CHECK(client.requests()[2].prompt == "p2");

  ScriptedClient repeat({"only"}, true);
  CHECK(repeat.complete({}) == "only");
  CHECK(repeat.complete({}) == "only");

  ScriptedClient retried({"fine"});
  retried.fail_next(2);
  CHECK(complete_with_retry(retried, {}, RetryPolicy{3, 1ms}) == "fine");
  CHECK(retried.calls() == 3);
}

TEST_CASE("http client round trip") {
  TestServer server(0, 200);
  auto client = make_http_client({server.url("/v1/complete"), "demo-model", "secret", 5s});
  LlmRequest r;
  r.prompt = "hello";
  CHECK(client->complete(r) == "echo:hello");
  CHECK(server.last_auth == "Bearer secret");
  auto body = nlohmann::json::parse(server.last_body);
  CHECK(body["model"] == "demo-model");
  CHECK(body["temperature"] == 0.0);
  CHECK(body["max_tokens"] == 300);
  CHECK(body["top_p"] == 0.95);
}

TEST_CASE("http client retries on 5xx and 429") {
  for (int status : {503, 429}) {
    TestServer server(2, status);
    auto client = make_http_client({server.url("/v1/complete"), "", "", 5s});
    LlmRequest r;
    r.prompt = "x";
    CHECK(complete_with_retry(*client, r, RetryPolicy{3, 1ms}) == "echo:x");
    CHECK(server.hits == 3);
  }
}

TEST_CASE("http client errors") {
  TestServer server(1, 400);
  auto client = make_http_client({server.url("/v1/complete"), "", "", 5s});
  CHECK_THROWS_AS(complete_with_retry(*client, {}, RetryPolicy{3, 1ms}), PipelineError);
  CHECK(server.hits == 1);

  auto bad = make_http_client({server.url("/bad"), "", "", 5s});
  CHECK_THROWS_AS(bad->complete({}), PipelineError);

  auto missing = make_http_client({server.url("/nowhere"), "", "", 5s});
  CHECK_THROWS_AS(missing->complete({}), PipelineError);

  auto refused = make_http_client({"http://127.0.0.1:1/v1", "", "", 1s});
  CHECK_THROWS_AS(refused->complete({}), TransportError);

  CHECK_THROWS_AS(make_http_client({"127.0.0.1/v1", "", "", 1s}), ConfigError);
  CHECK_THROWS_AS(make_http_client({"ftp://host/v1", "", "", 1s}), ConfigError);
}
