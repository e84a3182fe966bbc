#pragma once

// Persistent store of exact Kloosterman phase multisets.
//
// File layout (all integers little-endian):
//   header  : "KLSC" magic, u32 version
//   record* : u32 payload length, payload, u64 FNV-1a checksum of payload
//   payload : u32 id length, id bytes, i64 m, i64 n, i64 c, i64 summands,
//             u64 term count, (i64 num, i64 den, i64 weight) per term
// Records are appended; a later record for the same key replaces an earlier one.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "kloost/kloosterman.hpp"

namespace kloost {

/// The file was written by an incompatible format version.
class CacheVersionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CacheStats {
  std::size_t records = 0;
  std::uintmax_t bytes = 0;
  std::vector<std::string> corruption;
};

struct CacheVerifyReport {
  std::size_t checked = 0;
  std::vector<std::string> mismatches;
  std::vector<std::string> corruption;
  bool ok() const { return mismatches.empty() && corruption.empty(); }
};

class SumCache {
 public:
  static constexpr std::uint32_t kVersion = 1;

  /// Opens (or lazily creates) the file. Throws CacheVersionError on a
  /// version mismatch; corrupt or truncated records are skipped and listed
  /// in stats().corruption.
  explicit SumCache(std::filesystem::path path);

  /// $KLOOST_CACHE if set, else $HOME/.cache/kloost/sums.bin.
  static std::filesystem::path default_path();

  const std::filesystem::path& path() const { return path_; }

  std::optional<ExpSum> get(const SumKey& key) const;
  void put(const ExpSum& sum);

  CacheStats stats() const;
  /// Removes every record and the file itself.
  void clear();
  /// Recomputes a fixed-seed sample of about `fraction` of the records (at
  /// least one) and compares phase multisets.
  CacheVerifyReport verify(double fraction = 0.01) const;

 private:
  void load();

  std::filesystem::path path_;
  mutable std::shared_mutex mu_;
  std::map<SumKey, ExpSum> records_;
  std::vector<std::string> corruption_;
};

/// Recomputes the sum named by a key: "standard", "A" or a multiplier id.
ExpSum recompute(const SumKey& key);

/// generalized_S through an optional cache.
ExpSum cached_generalized_S(SumCache* cache, Int m, Int n, Int c, const MultiplierSpec& spec);

}  // namespace kloost
