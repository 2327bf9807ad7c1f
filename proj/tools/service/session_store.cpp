#include "service/session_store.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "dragfield/error.hpp"

namespace dragfield::service {

nlohmann::json SessionRecord::to_json() const {
  nlohmann::json j = {{"id", id},           {"width", width},     {"height", height},
                      {"channels", channels}, {"image", image},    {"mask", mask},
                      {"created", created}, {"updated", updated}};
  j["depth"] = depth ? nlohmann::json(*depth) : nlohmann::json(nullptr);
  j["last_edit"] = last_edit ? *last_edit : nlohmann::json(nullptr);
  return j;
}

SessionRecord SessionRecord::from_json(const nlohmann::json& j) {
  SessionRecord r;
  r.id = j.at("id").get<std::string>();
  r.width = j.at("width").get<int>();
  r.height = j.at("height").get<int>();
  r.channels = j.at("channels").get<int>();
  r.image = j.at("image").get<std::string>();
  r.mask = j.at("mask").get<std::string>();
  r.created = j.at("created").get<std::string>();
  r.updated = j.at("updated").get<std::string>();
  if (!j.at("depth").is_null()) r.depth = j.at("depth").get<std::string>();
  if (!j.at("last_edit").is_null()) r.last_edit = j.at("last_edit");
  return r;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

SessionStore::SessionStore(std::filesystem::path root) : root_(std::move(root)) {
  std::filesystem::create_directories(root_);
  for (const auto& entry : std::filesystem::directory_iterator(root_)) {
    if (entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path());
    const auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) continue;
    auto slot = std::make_shared<Slot>();
    try {
      slot->record = SessionRecord::from_json(j);
    } catch (const nlohmann::json::exception&) {
      continue;
    }
    slots_.emplace(slot->record.id, std::move(slot));
  }
}

std::filesystem::path SessionStore::path_for(const std::string& id) const {
  return root_ / (id + ".json");
}

std::string SessionStore::new_id() {
  std::lock_guard lock(rng_mutex_);
  static std::mt19937_64 rng{std::random_device{}()};
  std::ostringstream out;
  out << std::hex << std::setfill('0') << std::setw(16) << rng() << std::setw(16) << rng();
  return out.str();
}

SessionRecord SessionStore::create(SessionRecord record) {
  auto slot = std::make_shared<Slot>();
  std::unique_lock lock(map_mutex_);
  do {
    record.id = new_id();
  } while (slots_.count(record.id));
  record.created = record.updated = utc_timestamp();
  save(record);
  slot->record = record;
  slots_.emplace(record.id, std::move(slot));
  return record;
}

std::shared_ptr<SessionStore::Slot> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(map_mutex_);
  const auto it = slots_.find(id);
  return it == slots_.end() ? nullptr : it->second;
}

void SessionStore::save(SessionRecord& record) const {
  record.updated = utc_timestamp();
  const auto path = path_for(record.id);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << record.to_json().dump(2) << '\n';
    if (!out) throw IoError("cannot write session " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(map_mutex_);
  return slots_.size();
}

}  // namespace dragfield::service
