#include "kpgen/http_backend.hpp"

#include <regex>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace kpgen {

namespace {

using nlohmann::json;

bool retryable_status(int status) { return status == 408 || status == 429 || status >= 500; }

httplib::Client make_client(const std::string& scheme_host_port,
                            std::chrono::milliseconds timeout) {
  httplib::Client client(scheme_host_port);
  const auto secs = static_cast<time_t>(timeout.count() / 1000);
  const auto usecs = static_cast<time_t>((timeout.count() % 1000) * 1000);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);
  return client;
}

json parse_body(const std::string& body, const std::string& endpoint) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw ProtocolError(endpoint + ": response is not JSON: " + e.what());
  }
}

}  // namespace

HttpBackend::HttpBackend(std::string base_url, HttpBackendOptions options)
    : base_url_(std::move(base_url)), options_(options) {
  static const std::regex url_re(R"(^(http://[A-Za-z0-9.\-]+|http://\[[0-9A-Fa-f:]+\])(:[0-9]{1,5})?(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(base_url_, m, url_re)) {
    throw ConfigError("malformed backend URL '" + base_url_ + "' (expected http://host[:port][/prefix])");
  }
  scheme_host_port_ = m[1].str() + m[2].str();
  path_prefix_ = m[3].str();
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
  if (options_.retries < 0) throw ConfigError("retries must be non-negative");
}

std::string HttpBackend::post(const std::string& endpoint, const std::string& body) const {
  const auto path = path_prefix_ + endpoint;
  auto backoff = options_.initial_backoff;
  std::string last_error;
  for (int attempt = 0; attempt <= options_.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    auto client = make_client(scheme_host_port_, options_.timeout);
    const auto res = client.Post(path, body, "application/json");
    if (!res) {
      last_error = "request failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 200 && res->status < 300) return res->body;
    last_error = "HTTP " + std::to_string(res->status);
    if (!retryable_status(res->status)) break;
  }
  throw BackendError(base_url_ + endpoint + ": " + last_error);
}

std::vector<GeneratedSequence> HttpBackend::generate(const GenerationRequest& request) const {
  const json body = {{"text", request.text},
                     {"num_beams", request.num_beams},
                     {"max_length", request.max_target_tokens},
                     {"num_return_sequences", request.num_return_sequences}};
  const auto reply = parse_body(post("/generate", body.dump(-1, ' ', false, json::error_handler_t::replace)), "/generate");
  const auto seqs = reply.find("sequences");
  if (!reply.is_object() || seqs == reply.end() || !seqs->is_array()) {
    throw ProtocolError("/generate: response has no 'sequences' array");
  }
  std::vector<GeneratedSequence> out;
  out.reserve(seqs->size());
  for (const auto& item : *seqs) {
    const auto text = item.find("text");
    const auto score = item.find("score");
    if (!item.is_object() || text == item.end() || !text->is_string() ||
        score == item.end() || !score->is_number()) {
      throw ProtocolError("/generate: sequence entry needs string 'text' and numeric 'score'");
    }
    out.push_back({text->get<std::string>(), score->get<double>()});
  }
  return out;
}

std::optional<std::size_t> HttpBackend::count_tokens(std::string_view text) const {
  const json body = {{"text", text}};
  const auto reply = parse_body(post("/count_tokens", body.dump(-1, ' ', false, json::error_handler_t::replace)), "/count_tokens");
  const auto count = reply.is_object() ? reply.find("count") : reply.end();
  if (!reply.is_object() || count == reply.end() || !count->is_number_integer() ||
      count->get<long long>() < 0) {
    throw ProtocolError("/count_tokens: response needs a non-negative integer 'count'");
  }
  return count->get<std::size_t>();
}

bool HttpBackend::healthy() const {
  auto client = make_client(scheme_host_port_, options_.timeout);
  const auto res = client.Get(path_prefix_ + "/health");
  return res && res->status == 200;
}

}  // namespace kpgen
