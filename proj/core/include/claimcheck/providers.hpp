#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace claimcheck {

// Every external model (encoder, translator, mask filler, generator, embedder)
// is reached through a JSON request -> JSON response function. Transports
// throw ProviderError on failure.
using JsonTransport = std::function<nlohmann::json(const nlohmann::json& request)>;

struct RetryPolicy {
  std::size_t max_attempts = 3;
  std::chrono::milliseconds backoff{250};  // doubled after each failed attempt
};

// POSTs the request as application/json to `url` (http://host:port/path).
JsonTransport http_transport(std::string url, std::chrono::seconds timeout = std::chrono::seconds{600});

// Retries transport failures; the final ProviderError names the provider, the
// attempt count and the last underlying error.
nlohmann::json call_with_retry(const JsonTransport& transport, const nlohmann::json& request,
                               const RetryPolicy& policy, std::string_view provider_name);

}  // namespace claimcheck
