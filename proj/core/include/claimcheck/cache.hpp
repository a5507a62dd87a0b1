#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

namespace claimcheck {

// Content-addressed store of JSON artifacts: <root>/<namespace>/<key>.json.
// Writes go to a temporary file and are renamed into place, so concurrent
// writers of the same key are safe and readers never see partial files.
class ArtifactCache {
 public:
  ArtifactCache() = default;  // disabled cache: lookups miss, stores are no-ops
  explicit ArtifactCache(std::filesystem::path root);

  bool enabled() const noexcept { return !root_.empty(); }
  const std::filesystem::path& root() const noexcept { return root_; }

  std::optional<nlohmann::json> load(std::string_view ns, std::string_view key) const;
  void store(std::string_view ns, std::string_view key, const nlohmann::json& value) const;

  std::filesystem::path path_for(std::string_view ns, std::string_view key) const;

 private:
  std::filesystem::path root_;
};

}  // namespace claimcheck
