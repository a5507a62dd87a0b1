#include "claimcheck/cache.hpp"

#include <atomic>
#include <fstream>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "claimcheck/error.hpp"

namespace claimcheck {

ArtifactCache::ArtifactCache(std::filesystem::path root) : root_(std::move(root)) {}

std::filesystem::path ArtifactCache::path_for(std::string_view ns, std::string_view key) const {
  return root_ / std::string(ns) / (std::string(key) + ".json");
}

std::optional<nlohmann::json> ArtifactCache::load(std::string_view ns, std::string_view key) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(path_for(ns, key), std::ios::binary);
  if (!in) return std::nullopt;
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;  // unreadable entry: treat as a miss and overwrite later
  }
}

void ArtifactCache::store(std::string_view ns, std::string_view key, const nlohmann::json& value) const {
  if (!enabled()) return;
  static std::atomic<unsigned> counter{0};
  const auto target = path_for(ns, key);
  std::filesystem::create_directories(target.parent_path());
  const auto temp = target.parent_path() /
                    fmt::format(".{}.{}.{}.tmp", key, std::hash<std::thread::id>{}(std::this_thread::get_id()), counter++);
  {
    std::ofstream out(temp, std::ios::binary);
    if (!out) throw Error(fmt::format("cache: cannot write '{}'", temp.string()));
    out << value.dump();
  }
  std::filesystem::rename(temp, target);
}

}  // namespace claimcheck
