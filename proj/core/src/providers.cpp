#include "claimcheck/providers.hpp"

#include <thread>

#include <fmt/format.h>
#include <httplib.h>

#include "claimcheck/error.hpp"

namespace claimcheck {

namespace {

struct ParsedUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

ParsedUrl parse_url(std::string_view url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos || url.substr(0, scheme_end) != "http") {
    throw ConfigError(fmt::format("provider url '{}' must start with http://", url));
  }
  const auto path_start = url.find('/', scheme_end + 3);
  ParsedUrl parsed;
  parsed.origin = std::string(url.substr(0, path_start));
  parsed.path = path_start == std::string_view::npos ? "/" : std::string(url.substr(path_start));
  if (parsed.origin.size() <= scheme_end + 3) throw ConfigError(fmt::format("provider url '{}' has no host", url));
  return parsed;
}

}  // namespace

JsonTransport http_transport(std::string url, std::chrono::seconds timeout) {
  auto parsed = parse_url(url);
  return [parsed = std::move(parsed), url = std::move(url), timeout](const nlohmann::json& request) {
    httplib::Client client(parsed.origin);
    client.set_connection_timeout(std::chrono::seconds{10});
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    const auto response = client.Post(parsed.path, request.dump(), "application/json");
    if (!response) {
      throw ProviderError(fmt::format("POST {} failed: {}", url, httplib::to_string(response.error())));
    }
    if (response->status != 200) {
      throw ProviderError(fmt::format("POST {} returned HTTP {}: {}", url, response->status, response->body.substr(0, 200)));
    }
    try {
      return nlohmann::json::parse(response->body);
    } catch (const nlohmann::json::exception& e) {
      throw ProviderError(fmt::format("POST {} returned invalid JSON: {}", url, e.what()));
    }
  };
}

nlohmann::json call_with_retry(const JsonTransport& transport, const nlohmann::json& request,
                               const RetryPolicy& policy, std::string_view provider_name) {
  if (!transport) throw ConfigError(fmt::format("{} provider is not configured", provider_name));
  const std::size_t attempts = std::max<std::size_t>(policy.max_attempts, 1);
  auto delay = policy.backoff;
  std::string last_error;
  for (std::size_t attempt = 1; attempt <= attempts; ++attempt) {
    try {
      return transport(request);
    } catch (const ProviderError& e) {
      last_error = e.what();
    }
    if (attempt < attempts && delay.count() > 0) {
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
  }
  throw ProviderError(fmt::format("{} provider unreachable after {} attempt(s) (backoff {} ms, doubling): {}",
                                  provider_name, attempts, policy.backoff.count(), last_error));
}

}  // namespace claimcheck
