#pragma once

// On-disk cache of exact counts, one versioned JSON file per
// (d, kind, rooting). Counts are decimal strings so no precision is lost.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "lattice/enumerate.hpp"

namespace lattice::cache {

using nlohmann::json;
namespace fs = std::filesystem;

inline constexpr int kCacheSchemaVersion = 1;
inline constexpr const char* kCacheDirEnv = "LATTICE_CACHE_DIR";

enum class Generator { fast, oracle };

struct Entry {
  int schema_version = kCacheSchemaVersion;
  CountResult result;
  Generator generator = Generator::fast;
};

/// Flag wins over the environment variable; empty means caching is off.
inline fs::path resolve_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv(kCacheDirEnv); env && *env) return env;
  return {};
}

inline fs::path file_for(const fs::path& dir, int d, Kind kind, Rooting rooting) {
  return dir / ("counts_d" + std::to_string(d) + "_" + std::string(to_string(kind)) + "_" +
                std::string(to_string(rooting)) + ".json");
}

inline json to_json(const Entry& e) {
  json counts = json::array();
  for (int n = 1; n <= e.result.n_max; ++n) counts.push_back({{"n", n}, {"count", to_decimal(e.result.at(n))}});
  return json{{"schema_version", e.schema_version},
              {"d", e.result.d},
              {"kind", to_string(e.result.kind)},
              {"rooting", to_string(e.result.rooting)},
              {"counts", counts},
              {"generator", e.generator == Generator::fast ? "fast" : "oracle"},
              {"node_budget", e.result.node_budget},
              {"partial", e.result.partial}};
}

inline Entry from_json(const json& j) {
  Entry e;
  e.schema_version = j.at("schema_version").get<int>();
  auto& r = e.result;
  r.d = j.at("d").get<int>();
  r.kind = parse_kind(j.at("kind").get<std::string>());
  r.rooting = parse_rooting(j.at("rooting").get<std::string>());
  r.node_budget = j.value("node_budget", std::uint64_t{0});
  r.partial = j.value("partial", false);
  e.generator = j.at("generator").get<std::string>() == "oracle" ? Generator::oracle : Generator::fast;
  const auto& counts = j.at("counts");
  r.n_max = static_cast<int>(counts.size());
  r.counts.assign(static_cast<std::size_t>(r.n_max) + 1, 0);
  for (const auto& c : counts) {
    const int n = c.at("n").get<int>();
    if (n < 1 || n > r.n_max) throw std::invalid_argument("cache entry has out-of-range n");
    r.counts[static_cast<std::size_t>(n)] = parse_decimal(c.at("count").get<std::string>());
  }
  return e;
}

/// A usable cached result: right schema, complete, and covering n_max.
/// Anything else (missing, unreadable, stale schema, partial) is a miss.
inline std::optional<CountResult> load(const fs::path& dir, int d, Kind kind, Rooting rooting, int n_max) {
  if (dir.empty()) return std::nullopt;
  std::ifstream in(file_for(dir, d, kind, rooting));
  if (!in) return std::nullopt;
  try {
    const json j = json::parse(in);
    if (j.at("schema_version").get<int>() != kCacheSchemaVersion) return std::nullopt;
    Entry e = from_json(j);
    if (e.result.partial || e.result.n_max < n_max || e.result.d != d || e.result.kind != kind ||
        e.result.rooting != rooting)
      return std::nullopt;
    e.result.counts.resize(static_cast<std::size_t>(n_max) + 1);
    e.result.n_max = n_max;
    return e.result;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

/// Writes the entry unless the file already holds a complete result at least as long.
inline fs::path store(const fs::path& dir, const CountResult& r, Generator gen = Generator::fast) {
  fs::create_directories(dir);
  const auto path = file_for(dir, r.d, r.kind, r.rooting);
  if (!r.partial && load(dir, r.d, r.kind, r.rooting, r.n_max)) {
    std::ifstream in(path);
    if (json::parse(in).at("counts").size() > static_cast<std::size_t>(r.n_max)) return path;
  }
  std::ofstream out(path);
  out << to_json(Entry{kCacheSchemaVersion, r, gen}).dump(2) << '\n';
  return path;
}

}  // namespace lattice::cache
