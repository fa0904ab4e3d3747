#pragma once

// On-disk cache of code bases.
//
// File layout: "FPC1", then little-endian u32 p, h, the h+1 modulus
// coefficients, n, j, k, length, dim, then dim x length entries. For p = 2
// the entries form one LSB-first bit stream; otherwise one byte per entry.

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "galois/codes.hpp"

namespace galois {

struct CacheKey {
  std::uint32_t p = 2;
  std::uint32_t h = 1;
  std::vector<std::uint32_t> modulus;
  int n = 3;
  int j = 1;
  int k = 1;

  static CacheKey of(const ProjectiveSpace& space, int j, int k);
  std::string file_name() const;
  auto operator<=>(const CacheKey&) const = default;
};

/// Throws std::runtime_error naming the path when the file cannot be written.
void write_basis(const std::filesystem::path& path, const CacheKey& key, const RowEchelon& basis);
/// nullopt when the file is missing or its header, size or rows do not fit
/// the key and expected length. Row contents are not re-derived.
std::optional<RowEchelon> read_basis(const std::filesystem::path& path, const CacheKey& key, std::size_t length);

/// Default directory: $GALOIS_CACHE_DIR, else ./.cache.
std::filesystem::path default_cache_dir();

/// Thread-safe loader for base codes C_{j,k}(n,q). An empty directory
/// disables the disk layer.
class CodeCache {
 public:
  explicit CodeCache(std::filesystem::path dir, unsigned threads = 1);

  /// hit is set when the basis came from memory or disk.
  LinearCode get(const ProjectiveSpacePtr& space, int j, int k, bool* hit = nullptr);

  const std::filesystem::path& dir() const { return dir_; }
  std::size_t hits() const { return hits_; }
  std::size_t builds() const { return builds_; }

 private:
  struct Slot {
    std::once_flag once;
    std::optional<LinearCode> code;
  };

  std::filesystem::path dir_;
  unsigned threads_;
  std::mutex mu_;
  std::map<CacheKey, std::shared_ptr<Slot>> slots_;
  std::atomic<std::size_t> hits_{0};
  std::atomic<std::size_t> builds_{0};
};

}  // namespace galois
