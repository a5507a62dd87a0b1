#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace claimcheck {

// Incremental SHA-256, hex output. Used for content-addressed cache keys and
// id-set fingerprints.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  Sha256& update(std::string_view bytes);
  // Length-prefixed update, so that ("ab","c") and ("a","bc") differ.
  Sha256& field(std::string_view bytes);
  std::string hex_digest();

 private:
  void* ctx_;
  bool finished_ = false;
};

std::string sha256_hex(std::string_view bytes);

// Order-insensitive fingerprint of a set of ids (sorted, deduplicated before hashing).
std::string id_set_hash(std::span<const std::string> ids);

std::uint64_t fnv1a64(std::string_view bytes) noexcept;

}  // namespace claimcheck
