#include "mkd/cache.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <unistd.h>

#include "mkd/serialize.hpp"

namespace mkd {

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

std::filesystem::path default_cache_dir() {
  if (const char* d = std::getenv("MODKOSZUL_CACHE_DIR"); d && *d) return d;
  if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "modkoszul";
  return ".modkoszul-cache";
}

std::string ModelCache::key(CartanType type, uint32_t ell, const std::vector<Word>& family) {
  std::string f;
  for (const Word& w : family) {
    for (int s : w) f += std::to_string(s) + ",";
    f += ";";
  }
  return to_string(type) + "-" + std::to_string(ell) + "-" + sha256_hex(f).substr(0, 16);
}

std::filesystem::path ModelCache::path_for(const std::string& key) const { return dir_ / ("endalg-" + key + ".json"); }

ModelCache::Result ModelCache::load_or_build(CartanType type, uint32_t ell) {
  auto W = std::make_shared<WeylGroup>(type);
  const std::string k = key(type, ell, W->family());
  const auto path = path_for(k);
  Result R;
  if (std::filesystem::exists(path)) {
    try {
      std::ifstream in(path);
      json doc = json::parse(in);
      if (doc.at("schema_version").get<int>() != kCacheSchemaVersion) throw std::runtime_error("schema version changed");
      if (doc.at("key").get<std::string>() != k) throw std::runtime_error("key mismatch");
      const json& payload = doc.at("payload");
      if (sha256_hex(payload.dump()) != doc.at("checksum").get<std::string>()) throw std::runtime_error("checksum mismatch");
      R.model = model_from_json(payload, W, ell);
      R.hit = true;
      return R;
    } catch (const std::exception& e) {
      R.warning = "cache entry " + path.string() + " unusable (" + e.what() + "); recomputing";
    }
  }
  R.model = build_model(W, ell);
  json payload = model_to_json(R.model);
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::ostringstream ts;
  ts << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
  json doc{{"schema_version", kCacheSchemaVersion},
           {"key", k},
           {"checksum", sha256_hex(payload.dump())},
           {"created", ts.str()},
           {"payload", std::move(payload)}};
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  std::mt19937_64 rng(std::random_device{}());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(rng() % 1000000);
  {
    std::ofstream out(tmp);
    out << doc.dump() << "\n";
    if (!out) {
      R.warning += (R.warning.empty() ? "" : "; ") + std::string("could not write cache entry ") + tmp.string();
      std::filesystem::remove(tmp, ec);
      return R;
    }
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    R.warning += (R.warning.empty() ? "" : "; ") + std::string("could not install cache entry: ") + ec.message();
    std::filesystem::remove(tmp, ec);
  }
  return R;
}

}  // namespace mkd
