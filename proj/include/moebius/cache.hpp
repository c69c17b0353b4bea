#pragma once

#include "moebius/cells.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace moebius {

inline constexpr int kCacheFormatVersion = 1;

enum class CacheStatus { disabled, hit, miss, regenerated };
std::string cache_status_name(CacheStatus s);

/// --cache-dir wins, then MOEBIUS_CACHE_DIR; with neither the cache is off.
std::optional<std::filesystem::path> resolve_cache_dir(const std::optional<std::string>& flag);

/// FNV-1a 64, hex.
std::string checksum_hex(std::string_view data);

/// Half-diagram enumeration through the on-disk cache. Unreadable, stale or
/// corrupt entries are regenerated; write failures are ignored.
std::vector<HalfDiagram> cached_half_diagrams(Family f, int n, int lambda, int K,
                                              const std::optional<std::filesystem::path>& dir,
                                              CacheStatus* status = nullptr);

std::filesystem::path cache_file(const std::filesystem::path& dir, Family f, int n, int lambda, int K);

} // namespace moebius
