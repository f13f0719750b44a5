#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "mkd/gradedO.hpp"

namespace mkd {

inline constexpr int kCacheSchemaVersion = 1;

std::string sha256_hex(const std::string& data);

// $MODKOSZUL_CACHE_DIR, else $HOME/.cache/modkoszul, else ./.modkoszul-cache
std::filesystem::path default_cache_dir();

// One JSON document per (type, l, family hash). Documents are written to a
// temporary file and renamed into place; a document whose checksum or schema
// does not match is rebuilt with a warning.
class ModelCache {
 public:
  explicit ModelCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }
  static std::string key(CartanType type, uint32_t ell, const std::vector<Word>& family);
  std::filesystem::path path_for(const std::string& key) const;

  struct Result {
    GradedModel model;
    bool hit = false;
    std::string warning;
  };
  Result load_or_build(CartanType type, uint32_t ell);

 private:
  std::filesystem::path dir_;
};

}  // namespace mkd
