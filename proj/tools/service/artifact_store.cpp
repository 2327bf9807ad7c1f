#include "service/artifact_store.hpp"

#include <openssl/evp.h>

#include <array>
#include <atomic>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dragfield/error.hpp"

namespace dragfield::service {

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

ArtifactStore::ArtifactStore(std::filesystem::path root) : root_(std::move(root)) {
  std::filesystem::create_directories(root_);
}

bool ArtifactStore::valid_hash(std::string_view hash) {
  if (hash.size() != 64) return false;
  for (char c : hash) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

std::filesystem::path ArtifactStore::path_for(const std::string& hash) const {
  return root_ / hash.substr(0, 2) / hash;
}

std::string ArtifactStore::put(std::string_view bytes) {
  const std::string hash = sha256_hex(bytes);
  const auto path = path_for(hash);
  if (std::filesystem::exists(path)) return hash;
  std::filesystem::create_directories(path.parent_path());

  static std::atomic<unsigned long> counter{0};
  std::ostringstream tmp_name;
  tmp_name << hash << ".tmp." << std::this_thread::get_id() << '.' << counter++;
  const auto tmp = path.parent_path() / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("cannot write artifact " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
  return hash;
}

bool ArtifactStore::contains(const std::string& hash) const {
  return valid_hash(hash) && std::filesystem::exists(path_for(hash));
}

std::optional<std::string> ArtifactStore::get(const std::string& hash) const {
  if (!valid_hash(hash)) return std::nullopt;
  std::ifstream in(path_for(hash), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace dragfield::service
