#include <doctest.h>

#include <nlohmann/json.hpp>

#include "kpgen/http_backend.hpp"
#include "test_support.hpp"

using namespace kpgen;
using nlohmann::json;
using Reply = testing::StubServer::Reply;

namespace {

HttpBackendOptions fast_options(int retries = 2) {
  HttpBackendOptions o;
  o.timeout = std::chrono::milliseconds(2000);
  o.retries = retries;
  o.initial_backoff = std::chrono::milliseconds(1);
  return o;
}

}  // namespace

TEST_SUITE("http_backend") {

TEST_CASE("generate round trip") {
  testing::StubServer server;
  server.on_generate([](const std::string&) {
    return Reply{200, R"({"sequences":[{"text":"[a, b]","score":-0.1},{"text":"[c]","score":-0.9}]})"};
  });
  server.start();
  HttpBackend backend(server.base_url(), fast_options());
  CHECK(backend.healthy());

  GenerationRequest req;
  req.text = "some paragraph";
  req.num_beams = 20;
  req.num_return_sequences = 20;
  req.max_target_tokens = 128;
  const auto seqs = backend.generate(req);
  REQUIRE(seqs.size() == 2);
  CHECK(seqs[0] == GeneratedSequence{"[a, b]", -0.1});
  CHECK(seqs[1] == GeneratedSequence{"[c]", -0.9});

  const auto body = json::parse(server.generate_bodies().at(0));
  CHECK(body["text"] == "some paragraph");
  CHECK(body["num_beams"] == 20);
  CHECK(body["max_length"] == 128);
  CHECK(body["num_return_sequences"] == 20);
}

TEST_CASE("503 then 200 succeeds after one retry") {
  testing::StubServer server;
  std::atomic<int> calls{0};
  server.on_generate([&calls](const std::string&) {
    if (calls++ == 0) return Reply{503, "busy"};
    return Reply{200, R"({"sequences":[{"text":"[x]","score":0}]})"};
  });
  server.start();
  HttpBackend backend(server.base_url(), fast_options());
  const auto seqs = backend.generate({});
  REQUIRE(seqs.size() == 1);
  CHECK(server.generate_calls() == 2);
}

TEST_CASE("persistent 5xx becomes a transport error after the retry budget") {
  testing::StubServer server;
  server.on_generate([](const std::string&) { return Reply{500, "down"}; });
  server.start();
  HttpBackend backend(server.base_url(), fast_options(2));
  CHECK_THROWS_AS(backend.generate({}), BackendError);
  CHECK(server.generate_calls() == 3);
}

TEST_CASE("4xx is not retried") {
  testing::StubServer server;
  server.on_generate([](const std::string&) { return Reply{400, "bad"}; });
  server.start();
  HttpBackend backend(server.base_url(), fast_options(3));
  CHECK_THROWS_AS(backend.generate({}), BackendError);
  CHECK(server.generate_calls() == 1);
}

TEST_CASE("missing sequences is a protocol error") {
  testing::StubServer server;
  server.on_generate([](const std::string&) { return Reply{200, R"({"beams":[]})"}; });
  server.start();
  HttpBackend backend(server.base_url(), fast_options());
  CHECK_THROWS_AS(backend.generate({}), ProtocolError);
}

TEST_CASE("schema violations inside sequences") {
  testing::StubServer server;
  server.on_generate([](const std::string&) { return Reply{200, R"({"sequences":[{"text":3,"score":1}]})"}; });
  server.start();
  HttpBackend backend(server.base_url(), fast_options());
  CHECK_THROWS_AS(backend.generate({}), ProtocolError);
}

TEST_CASE("non-JSON body is a protocol error") {
  testing::StubServer server;
  server.on_generate([](const std::string&) { return Reply{200, "<html>"}; });
  server.start();
  HttpBackend backend(server.base_url(), fast_options());
  CHECK_THROWS_AS(backend.generate({}), ProtocolError);
}

TEST_CASE("count_tokens") {
  testing::StubServer server;
  server.on_count_tokens(testing::StubServer::whitespace_count_tokens());
  server.start();
  HttpBackend backend(server.base_url(), fast_options());
  CHECK(backend.count_tokens("one two three") == 3u);
  CHECK(backend.count_tokens("") == 0u);
  CHECK(BackendTokenCounter(backend).count("a b") == 2);
}

TEST_CASE("unreachable server") {
  HttpBackend backend("http://127.0.0.1:1", fast_options(1));
  CHECK_FALSE(backend.healthy());
  CHECK_THROWS_AS(backend.generate({}), BackendError);
}

TEST_CASE("malformed base URLs are rejected") {
  CHECK_THROWS_AS(HttpBackend("localhost:8000"), ConfigError);
  CHECK_THROWS_AS(HttpBackend("ftp://host"), ConfigError);
  CHECK_NOTHROW(HttpBackend("http://localhost:8000/api/"));
}

TEST_CASE("path prefix is honored") {
  testing::StubServer server;
  server.on_generate([](const std::string&) { return Reply{200, R"({"sequences":[]})"}; });
  server.start();
  // The stub serves at the root, so a prefix must make the call miss.
  HttpBackend prefixed(server.base_url() + "/v1", fast_options(0));
  CHECK_THROWS_AS(prefixed.generate({}), BackendError);
  HttpBackend plain(server.base_url() + "/", fast_options(0));
  CHECK(plain.generate({}).empty());
}

}
