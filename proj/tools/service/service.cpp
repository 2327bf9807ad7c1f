#include "service/service.hpp"

#include <iostream>

#include "dragfield/error.hpp"
#include "dragfield/float_grid_io.hpp"
#include "dragfield/image_io.hpp"
#include "httplib.h"

namespace dragfield::service {
namespace {

using nlohmann::json;

std::span<const std::uint8_t> as_bytes(const std::string& s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

ImageGrid decode_image_or(const std::string& bytes, const char* what) {
  try {
    return decode_png(as_bytes(bytes));
  } catch (const IoError& e) {
    throw ApiError{400, "invalid_" + std::string(what), e.what()};
  }
}

FloatGrid decode_depth(const std::string& bytes) {
  try {
    return decode_float_grid(as_bytes(bytes));
  } catch (const IoError& e) {
    throw ApiError{400, "invalid_depth", e.what()};
  }
}

Mask decode_mask(const std::string& bytes, int width, int height) {
  Mask mask = mask_from_image(decode_image_or(bytes, "mask"));
  if (mask.width() != width || mask.height() != height) {
    throw ApiError{422, "shape_mismatch", "mask is " + std::to_string(mask.width()) + "x" +
                                              std::to_string(mask.height()) + ", image is " +
                                              std::to_string(width) + "x" + std::to_string(height)};
  }
  return mask;
}

template <class T>
T get_or(const json& body, const char* key, T fallback) {
  const auto it = body.find(key);
  if (it == body.end() || it->is_null()) return fallback;
  return it->get<T>();
}

json error_body(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <class Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const ApiError& e) {
      send_json(res, e.status, error_body(e.code, e.message));
    } catch (const ValidationError& e) {
      send_json(res, 422, error_body("validation_error", e.what()));
    } catch (const IoError& e) {
      send_json(res, 400, error_body("invalid_payload", e.what()));
    } catch (const json::exception& e) {
      send_json(res, 400, error_body("invalid_json", e.what()));
    } catch (const std::exception& e) {
      send_json(res, 500, error_body("internal_error", e.what()));
    }
  };
}

}  // namespace

EditRequest EditRequest::from_json(const json& body) {
  if (!body.is_object()) throw ApiError{400, "invalid_request", "edit body must be a JSON object"};
  EditRequest r;
  const auto pairs = body.find("pairs");
  if (pairs == body.end()) throw ApiError{400, "invalid_request", "missing \"pairs\""};
  r.pairs = parse_drag_pairs(pairs->dump());
  r.params.field.geometry.alpha = get_or(body, "alpha", 1.0);
  r.params.field.geometry.ratio_cap = get_or(body, "ratio_cap", r.params.field.geometry.ratio_cap);
  r.params.field.plane.beta = get_or(body, "beta", 1.0);
  r.params.field.fusion.gamma_scale = get_or(body, "gamma", 1.0);
  r.params.strategy = parse_strategy(get_or<std::string>(body, "strategy", "partition"));
  r.params.eta = get_or(body, "eta", 0.0);
  const auto seed = body.find("seed");
  if (seed != body.end() && !seed->is_null()) {
    if (!seed->is_number_unsigned()) {
      throw ValidationError("seed must be a non-negative integer");
    }
    r.params.seed = seed->get<std::uint64_t>();
  }
  const auto mask = body.find("mask");
  if (mask != body.end() && !mask->is_null()) r.mask = mask->get<std::string>();
  r.params.validate();
  return r;
}

json EditRequest::to_json() const {
  json j = {{"pairs", json::parse(format_drag_pairs(pairs))},
            {"alpha", params.field.geometry.alpha},
            {"beta", params.field.plane.beta},
            {"gamma", params.field.fusion.gamma_scale},
            {"ratio_cap", params.field.geometry.ratio_cap},
            {"strategy", std::string(strategy_name(params.strategy))},
            {"eta", params.eta},
            {"seed", params.seed}};
  j["mask"] = mask ? json(*mask) : json(nullptr);
  return j;
}

Service::Service(const std::filesystem::path& state_dir)
    : artifacts_(state_dir / "artifacts"), sessions_(state_dir / "sessions") {}

std::shared_ptr<SessionStore::Slot> Service::require_session(const std::string& id) const {
  auto slot = sessions_.find(id);
  if (!slot) throw ApiError{404, "session_not_found", "no session " + id};
  return slot;
}

std::string Service::require_artifact(const std::string& hash) const {
  auto bytes = artifacts_.get(hash);
  if (!bytes) throw ApiError{404, "artifact_not_found", "no artifact " + hash};
  return *bytes;
}

json Service::create_session(const std::string& image_png,
                             const std::optional<std::string>& depth_fgrid,
                             const std::optional<std::string>& mask_png) {
  const ImageGrid image = decode_image_or(image_png, "image");
  SessionRecord record;
  record.width = image.width();
  record.height = image.height();
  record.channels = image.channels();
  if (depth_fgrid) {
    const FloatGrid depth = decode_depth(*depth_fgrid);
    if (depth.width() != image.width() || depth.height() != image.height()) {
      throw ApiError{422, "shape_mismatch", "depth grid does not match the image"};
    }
    record.depth = artifacts_.put(*depth_fgrid);
  }
  if (mask_png) {
    decode_mask(*mask_png, image.width(), image.height());
    record.mask = artifacts_.put(*mask_png);
  } else {
    record.mask = artifacts_.put(encode_png(mask_to_image(Mask(image.width(), image.height(), 1))));
  }
  record.image = artifacts_.put(image_png);
  const SessionRecord created = sessions_.create(std::move(record));
  return {{"id", created.id}};
}

json Service::put_mask(const std::string& id, const std::string& mask_png) {
  auto slot = require_session(id);
  std::lock_guard lock(slot->mutex);
  SessionRecord& rec = slot->record;
  decode_mask(mask_png, rec.width, rec.height);
  SessionRecord next = rec;
  next.mask = artifacts_.put(mask_png);
  sessions_.save(next);
  rec = std::move(next);
  return {{"mask_url", ArtifactStore::url(rec.mask)}};
}

json Service::edit(const std::string& id, const json& body) {
  auto slot = require_session(id);
  const EditRequest request = EditRequest::from_json(body);

  std::lock_guard lock(slot->mutex);
  SessionRecord& rec = slot->record;
  const std::string mask_hash = request.mask.value_or(rec.mask);
  EditInputs inputs{decode_image_or(require_artifact(rec.image), "image"), std::nullopt,
                    decode_mask(require_artifact(mask_hash), rec.width, rec.height),
                    request.pairs};
  if (rec.depth) inputs.depth = decode_depth(require_artifact(*rec.depth));

  const EditOutcome outcome = run_edit(inputs, request.params);
  const EditArtifacts art = render_artifacts(outcome, inputs, request.params);
  const json response = {
      {"field_dx_url", ArtifactStore::url(artifacts_.put(art.field_dx))},
      {"field_dy_url", ArtifactStore::url(artifacts_.put(art.field_dy))},
      {"warped_url", ArtifactStore::url(artifacts_.put(art.warped))},
      {"field_vis_url", ArtifactStore::url(artifacts_.put(art.field_vis))},
      {"report", json::parse(art.report)},
  };

  SessionRecord next = rec;
  next.last_edit = json{{"request", request.to_json()}, {"result", response}};
  sessions_.save(next);
  rec = std::move(next);
  return response;
}

json Service::describe(const std::string& id) const {
  auto slot = require_session(id);
  std::lock_guard lock(slot->mutex);
  const SessionRecord& rec = slot->record;
  json j = {{"id", rec.id},
            {"width", rec.width},
            {"height", rec.height},
            {"channels", rec.channels},
            {"image_url", ArtifactStore::url(rec.image)},
            {"mask_url", ArtifactStore::url(rec.mask)},
            {"created", rec.created},
            {"updated", rec.updated}};
  j["depth_url"] = rec.depth ? json(ArtifactStore::url(*rec.depth)) : json(nullptr);
  j["last_edit"] = rec.last_edit ? *rec.last_edit : json(nullptr);
  return j;
}

void Service::mount(httplib::Server& server) {
  server.Get("/healthz", guarded([](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, {{"status", "ok"}});
  }));

  server.Post("/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
    if (!req.is_multipart_form_data()) {
      throw ApiError{400, "invalid_request", "expected multipart/form-data"};
    }
    if (!req.has_file("image")) throw ApiError{400, "missing_image", "multipart part \"image\" is required"};
    auto part = [&](const char* key) -> std::optional<std::string> {
      if (!req.has_file(key)) return std::nullopt;
      return req.get_file_value(key).content;
    };
    send_json(res, 201, create_session(req.get_file_value("image").content, part("depth"), part("mask")));
  }));

  server.Get(R"(/sessions/([^/]+))",
             guarded([this](const httplib::Request& req, httplib::Response& res) {
               send_json(res, 200, describe(req.matches[1]));
             }));

  server.Put(R"(/sessions/([^/]+)/mask)",
             guarded([this](const httplib::Request& req, httplib::Response& res) {
               send_json(res, 200, put_mask(req.matches[1], req.body));
             }));

  server.Post(R"(/sessions/([^/]+)/edit)",
              guarded([this](const httplib::Request& req, httplib::Response& res) {
                const json body = req.body.empty() ? json::object() : json::parse(req.body);
                send_json(res, 200, edit(req.matches[1], body));
              }));

  server.Get(R"(/artifacts/([0-9a-f]{64}))",
             guarded([this](const httplib::Request& req, httplib::Response& res) {
               const std::string bytes = require_artifact(req.matches[1]);
               const bool png = bytes.size() >= 8 && bytes.compare(1, 3, "PNG") == 0;
               const bool text = !bytes.empty() && bytes.front() == '{';
               res.set_header("Cache-Control", "public, max-age=31536000, immutable");
               res.set_content(bytes, png    ? "image/png"
                                      : text ? "application/json"
                                             : "application/octet-stream");
             }));

  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    const std::string code = res.status == 404 ? "not_found" : "http_error";
    res.set_content(error_body(code, "HTTP " + std::to_string(res.status)).dump(),
                    "application/json");
  });
}

int serve(const std::filesystem::path& state_dir, const std::string& host, int port) {
  Service service(state_dir);
  httplib::Server server;
  service.mount(server);
  server.set_logger([](const httplib::Request& req, const httplib::Response& res) {
    std::clog << req.method << ' ' << req.path << ' ' << res.status << '\n';
  });
  std::clog << "listening on " << host << ':' << port << " (state: " << state_dir.string()
            << ", sessions: " << service.sessions().size() << ")\n";
  if (!server.listen(host, port)) {
    std::cerr << "cannot listen on " << host << ':' << port << '\n';
    return 3;
  }
  return 0;
}

}  // namespace dragfield::service
