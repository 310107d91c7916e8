#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace diamfree::report {

/// FNV-1a 64-bit content hash, lowercase hex. Stable across platforms;
/// used to key cached reports.
std::string fnv1a_hex(std::string_view data);

/// Cache directory resolution: DIAMFREE_CACHE_DIR overrides the fallback.
std::string resolve_cache_dir(const std::string& fallback);

/// Reads <dir>/<key>.json if present.
std::optional<std::string> cache_lookup(const std::string& dir, const std::string& key);

/// Writes <dir>/<key>.json (append-only keying: an existing entry is left
/// untouched unless overwrite is set).
void cache_store(const std::string& dir, const std::string& key,
                 const std::string& content, bool overwrite = false);

}  // namespace diamfree::report
