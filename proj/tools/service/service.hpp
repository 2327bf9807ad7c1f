#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "dragfield/pipeline.hpp"
#include "json.hpp"
#include "service/artifact_store.hpp"
#include "service/session_store.hpp"

namespace httplib {
class Server;
}

namespace dragfield::service {

/// Error surfaced to HTTP clients as {"error": {"code", "message"}}.
struct ApiError {
  int status;
  std::string code;
  std::string message;
};

/// Body of POST /sessions/{id}/edit. Missing keys take the defaults
/// alpha = beta = gamma = 1, strategy "partition", eta 0, seed 0.
struct EditRequest {
  DragSet pairs;
  EditParams params;
  /// Artifact hash of an alternative mask; the session mask when absent.
  std::optional<std::string> mask;

  static EditRequest from_json(const nlohmann::json& body);
  nlohmann::json to_json() const;
};

class Service {
 public:
  explicit Service(const std::filesystem::path& state_dir);

  /// Registers all routes on `server`.
  void mount(httplib::Server& server);

  nlohmann::json create_session(const std::string& image_png,
                                const std::optional<std::string>& depth_fgrid,
                                const std::optional<std::string>& mask_png);
  nlohmann::json put_mask(const std::string& id, const std::string& mask_png);
  nlohmann::json edit(const std::string& id, const nlohmann::json& body);
  nlohmann::json describe(const std::string& id) const;

  ArtifactStore& artifacts() { return artifacts_; }
  SessionStore& sessions() { return sessions_; }

 private:
  std::shared_ptr<SessionStore::Slot> require_session(const std::string& id) const;
  std::string require_artifact(const std::string& hash) const;

  ArtifactStore artifacts_;
  SessionStore sessions_;
};

/// Blocks serving on host:port until the process is stopped.
int serve(const std::filesystem::path& state_dir, const std::string& host, int port);

}  // namespace dragfield::service
