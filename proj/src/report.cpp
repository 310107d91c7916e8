#include "diamfree/report.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace diamfree::report {

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string resolve_cache_dir(const std::string& fallback) {
  if (const char* env = std::getenv("DIAMFREE_CACHE_DIR"); env && *env) return env;
  return fallback;
}

std::optional<std::string> cache_lookup(const std::string& dir, const std::string& key) {
  const std::filesystem::path path = std::filesystem::path(dir) / (key + ".json");
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void cache_store(const std::string& dir, const std::string& key,
                 const std::string& content, bool overwrite) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path path = std::filesystem::path(dir) / (key + ".json");
  if (!overwrite && std::filesystem::exists(path)) return;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

}  // namespace diamfree::report
