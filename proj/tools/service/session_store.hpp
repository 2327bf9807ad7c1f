#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "json.hpp"

namespace dragfield::service {

/// Persistent session state. Rasters are referenced by artifact hash.
struct SessionRecord {
  std::string id;
  int width = 0;
  int height = 0;
  int channels = 0;
  std::string image;
  std::optional<std::string> depth;
  std::string mask;
  std::string created;
  std::string updated;
  /// Request echo, artifact hashes and report of the most recent edit.
  std::optional<nlohmann::json> last_edit;

  nlohmann::json to_json() const;
  static SessionRecord from_json(const nlohmann::json& j);
};

/// Sessions on disk under <state>/sessions/<id>.json, cached in memory.
/// Callers hold Slot::mutex for the whole read-modify-write of one session;
/// distinct sessions never contend beyond the brief map lookup.
class SessionStore {
 public:
  struct Slot {
    std::mutex mutex;
    SessionRecord record;
  };

  explicit SessionStore(std::filesystem::path root);

  /// Assigns a fresh id and timestamps, persists, and returns the record.
  SessionRecord create(SessionRecord record);
  std::shared_ptr<Slot> find(const std::string& id) const;
  /// Persists `record`; call with the slot's mutex held.
  void save(SessionRecord& record) const;

  std::size_t size() const;

 private:
  std::filesystem::path path_for(const std::string& id) const;
  std::string new_id();

  std::filesystem::path root_;
  mutable std::shared_mutex map_mutex_;
  std::unordered_map<std::string, std::shared_ptr<Slot>> slots_;
  std::mutex rng_mutex_;
};

std::string utc_timestamp();

}  // namespace dragfield::service
