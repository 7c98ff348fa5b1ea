#pragma once

#include <chrono>
#include <string>

#include "kpgen/generation.hpp"

namespace kpgen {

struct HttpBackendOptions {
  std::chrono::milliseconds timeout{30000};
  /// Extra attempts after the first failure of a retryable request.
  int retries = 3;
  std::chrono::milliseconds initial_backoff{200};
};

/// Client for the generation server:
///   POST {base}/generate      {"text","num_beams","max_length","num_return_sequences"}
///                             -> {"sequences":[{"text","score"},...]}
///   POST {base}/count_tokens  {"text"} -> {"count"}
///   GET  {base}/health        -> 200
/// Connection errors, 408, 429 and 5xx are retried with exponential backoff.
/// Each call opens its own connection, so concurrent use is safe.
class HttpBackend final : public GenerationBackend {
 public:
  explicit HttpBackend(std::string base_url, HttpBackendOptions options = {});

  std::vector<GeneratedSequence> generate(const GenerationRequest& request) const override;
  std::optional<std::size_t> count_tokens(std::string_view text) const override;
  bool healthy() const;

  const std::string& base_url() const { return base_url_; }

 private:
  std::string post(const std::string& endpoint, const std::string& body) const;

  std::string base_url_;
  std::string scheme_host_port_;
  std::string path_prefix_;
  HttpBackendOptions options_;
};

}  // namespace kpgen
