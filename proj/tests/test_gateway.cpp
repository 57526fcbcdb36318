#include <doctest.h>

#include <atomic>
#include <chrono>
#include <memory>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "hotline/errors.hpp"
#include "hotline/llm/gateway.hpp"
#include "hotline/llm/http_backend.hpp"
#include "hotline/llm/mock_backend.hpp"
#include "hotline/prompts.hpp"
#include "hotline/text.hpp"
#include "support.hpp"

using namespace hotline;
using namespace hotline::llm;

namespace {

ChatRequest summarize_request(std::string user, std::size_t max_chars = 512) {
  ChatRequest req;
  req.system_prompt = summarize_system_prompt();
  req.user_prompt = std::move(user);
  req.max_output_chars = max_chars;
  return req;
}

ChatRequest predict_request(std::string user) {
  ChatRequest req;
  req.system_prompt = predict_system_prompt();
  req.user_prompt = std::move(user);
  req.max_output_chars = 4096;
  return req;
}

// Local chat-completions stub driven by a handler on the response status
// and body. Listens on a random loopback port.
class StubServer {
 public:
  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  explicit StubServer(Handler handler) : handler_(std::move(handler)) {
    server_.Post("/chat/completions",
                 [this](const httplib::Request& req, httplib::Response& res) {
                   handler_(req, res);
                 });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~StubServer() {
    server_.stop();
    thread_.join();
  }

  std::string base_url() const {
    return "http://127.0.0.1:" + std::to_string(port_);
  }

  static void reply_ok(httplib::Response& res, const std::string& content) {
    nlohmann::json body = {
        {"choices",
         {{{"message", {{"role", "assistant"}, {"content", content}}}}}}};
    res.set_content(body.dump(), "application/json");
  }

 private:
  httplib::Server server_;
  Handler handler_;
  int port_ = 0;
  std::thread thread_;
};

HttpBackendConfig fast_config(const std::string& base_url) {
  HttpBackendConfig cfg;
  cfg.base_url = base_url;
  cfg.model = "test-model";
  cfg.max_retries = 3;
  cfg.timeout_ms = 2000;
  cfg.backoff_ms = 1;  // keep retry tests fast
  cfg.api_key = "test-key";
  return cfg;
}

}  // namespace

TEST_SUITE("gateway") {

TEST_CASE("mock backend is deterministic across 100 calls") {
  MockBackend mock;
  const auto req = summarize_request("今天很难受 [risk:hopelessness] 吃不下饭");
  const auto first = mock.complete(req);
  for (int i = 0; i < 100; ++i) {
    CHECK(mock.complete(req).text == first.text);
  }
}

TEST_CASE("mock summarize echoes matched tags plus an input prefix") {
  MockBackend mock;
  const std::string tag1 = factor_tag(ScaleElement::SuicidalIdeationAndPlan);
  const std::string tag2 = factor_tag(ScaleElement::AcuteLifeEvents);
  const auto response =
      mock.complete(summarize_request("开头" + tag1 + "中间" + tag2 + "结尾"));
  CHECK(response.text.find(tag1) != std::string::npos);
  CHECK(response.text.find(tag2) != std::string::npos);
  CHECK(response.text.find("开头") != std::string::npos);
  CHECK(u8_length(response.text) <= 512);
}

TEST_CASE("mock prediction sums distinct factor weights") {
  MockBackend mock;
  const std::string tags = factor_tag(ScaleElement::SuicidalIdeationAndPlan) +
                           factor_tag(ScaleElement::AcuteLifeEvents);
  SUBCASE("ideation(4) + acute(2) = 6") {
    const auto response = mock.complete(predict_request("summary " + tags));
    const auto parsed = nlohmann::json::parse(response.text);
    CHECK(parsed["risk_score"] == 6);
    CHECK(parsed["risk_label"] == "low-moderate");
  }
  SUBCASE("duplicated tags count once") {
    const auto response =
        mock.complete(predict_request("summary " + tags + tags));
    CHECK(nlohmann::json::parse(response.text)["risk_score"] == 6);
  }
  SUBCASE("no matches scores 0, low-moderate") {
    const auto response = mock.complete(predict_request("没有风险标记"));
    const auto parsed = nlohmann::json::parse(response.text);
    CHECK(parsed["risk_score"] == 0);
    CHECK(parsed["risk_label"] == "low-moderate");
    CHECK(parsed["key_factors"].empty());
  }
}

TEST_CASE("mock importance is the weight sum clamped to [1,10]") {
  MockBackend mock;
  ChatRequest req;
  req.system_prompt = importance_system_prompt();
  req.max_output_chars = 16;

  req.user_prompt = "nothing";
  CHECK(mock.complete(req).text == "1");

  req.user_prompt = factor_tag(ScaleElement::Hopelessness);
  CHECK(mock.complete(req).text == "1");

  req.user_prompt = factor_tag(ScaleElement::SuicidalIdeationAndPlan) +
                    factor_tag(ScaleElement::SevereDepression);
  CHECK(mock.complete(req).text == "5");

  std::string all;
  for (const auto& f : default_risk_lexicon()) all += f.tag;
  req.user_prompt = all;  // sum 16, clamped
  CHECK(mock.complete(req).text == "10");
}

TEST_CASE("mock rejects prompts without a task sentinel") {
  MockBackend mock;
  ChatRequest req;
  req.system_prompt = "hello";
  req.user_prompt = "world";
  CHECK_THROWS_AS(mock.complete(req), UnknownPromptShape);
}

TEST_CASE("gateway truncates long replies with the marker") {
  auto backend =
      std::make_shared<test::ScriptedBackend>(std::vector<std::string>{
          std::string(100, 'x'), "short"});
  Gateway gateway(backend, 2);

  ChatRequest req;
  req.system_prompt = "any";
  req.user_prompt = "any";
  req.max_output_chars = 10;

  const auto truncated = gateway.complete(req);
  CHECK(u8_length(truncated.text) ==
        10 + u8_length(std::string(kTruncationMarker)));
  CHECK(truncated.text.substr(0, 10) == std::string(10, 'x'));
  CHECK(truncated.text.find("[truncated]") != std::string::npos);

  const auto untouched = gateway.complete(req);
  CHECK(untouched.text == "short");
}

TEST_CASE("gateway bounds in-flight requests") {
  class SlowBackend : public ChatBackend {
   public:
    ChatResponse complete(const ChatRequest&) override {
      const int now = ++in_flight;
      int seen = peak.load();
      while (now > seen && !peak.compare_exchange_weak(seen, now)) {
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(20));
      --in_flight;
      return {"ok", "slow", 0, 1};
    }
    std::string id() const override { return "slow"; }
    std::atomic<int> in_flight{0};
    std::atomic<int> peak{0};
  };

  auto backend = std::make_shared<SlowBackend>();
  Gateway gateway(backend, 2);

  ChatRequest req;
  req.system_prompt = "s";
  req.user_prompt = "u";
  req.max_output_chars = 10;

  std::vector<std::thread> callers;
  for (int i = 0; i < 8; ++i) {
    callers.emplace_back([&] { gateway.complete(req); });
  }
  for (auto& t : callers) t.join();
  CHECK(backend->peak.load() <= 2);
}

TEST_CASE("http backend retries 500s and succeeds with attempt_count 3") {
  std::atomic<int> hits{0};
  StubServer server([&](const httplib::Request& req, httplib::Response& res) {
    // Wire shape checks: auth header and chat-completions body.
    CHECK(req.get_header_value("Authorization") == "Bearer test-key");
    const auto body = nlohmann::json::parse(req.body);
    CHECK(body["model"] == "test-model");
    CHECK(body["messages"][0]["role"] == "system");
    CHECK(body["messages"][1]["role"] == "user");
    CHECK(body["messages"][1]["content"] == "ping");
    CHECK(body["temperature"] == 0.0);

    if (++hits <= 2) {
      res.status = 500;
      return;
    }
    StubServer::reply_ok(res, "pong");
  });

  HttpBackend backend(fast_config(server.base_url()));
  ChatRequest req;
  req.system_prompt = "sys";
  req.user_prompt = "ping";
  req.max_output_chars = 100;

  const auto response = backend.complete(req);
  CHECK(response.text == "pong");
  CHECK(response.attempt_count == 3);
  CHECK(hits == 3);
}

TEST_CASE("http backend exhausts retries on persistent timeouts") {
  StubServer server([](const httplib::Request&, httplib::Response& res) {
    std::this_thread::sleep_for(std::chrono::milliseconds(400));
    StubServer::reply_ok(res, "late");
  });

  auto cfg = fast_config(server.base_url());
  cfg.max_retries = 2;
  cfg.timeout_ms = 50;
  HttpBackend backend(cfg);

  ChatRequest req;
  req.system_prompt = "sys";
  req.user_prompt = "ping";

  try {
    backend.complete(req);
    FAIL("expected TransportError");
  } catch (const TransportError& e) {
    CHECK(e.attempts == 3);
  }
}

TEST_CASE("http backend maps 401 to AuthError without retrying") {
  std::atomic<int> hits{0};
  StubServer server([&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    res.status = 401;
  });

  HttpBackend backend(fast_config(server.base_url()));
  ChatRequest req;
  req.system_prompt = "sys";
  req.user_prompt = "ping";
  CHECK_THROWS_AS(backend.complete(req), AuthError);
  CHECK(hits == 1);
}

TEST_CASE("http backend maps an empty reply to BackendRefusal") {
  StubServer server([](const httplib::Request&, httplib::Response& res) {
    StubServer::reply_ok(res, "");
  });

  HttpBackend backend(fast_config(server.base_url()));
  ChatRequest req;
  req.system_prompt = "sys";
  req.user_prompt = "ping";
  CHECK_THROWS_AS(backend.complete(req), BackendRefusal);
}

TEST_CASE("http backend honors a base_url path prefix") {
  httplib::Server raw;
  std::atomic<bool> hit{false};
  raw.Post("/v1/chat/completions",
           [&](const httplib::Request&, httplib::Response& res) {
             hit = true;
             StubServer::reply_ok(res, "ok");
           });
  const int port = raw.bind_to_any_port("127.0.0.1");
  std::thread listener([&] { raw.listen_after_bind(); });
  raw.wait_until_ready();

  auto cfg = fast_config("http://127.0.0.1:" + std::to_string(port) + "/v1");
  HttpBackend backend(cfg);
  ChatRequest req;
  req.system_prompt = "sys";
  req.user_prompt = "ping";
  CHECK(backend.complete(req).text == "ok");
  CHECK(hit);

  raw.stop();
  listener.join();
}

}  // TEST_SUITE
