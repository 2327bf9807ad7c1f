#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace dragfield::service {

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

/// Immutable blobs stored under their SHA-256. Writes are atomic, so
/// concurrent puts of the same content are harmless.
class ArtifactStore {
 public:
  explicit ArtifactStore(std::filesystem::path root);

  std::string put(std::string_view bytes);
  std::optional<std::string> get(const std::string& hash) const;
  bool contains(const std::string& hash) const;

  static bool valid_hash(std::string_view hash);
  static std::string url(const std::string& hash) { return "/artifacts/" + hash; }

 private:
  std::filesystem::path path_for(const std::string& hash) const;

  std::filesystem::path root_;
};

}  // namespace dragfield::service
