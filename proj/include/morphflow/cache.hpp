/**
 * @file cache.hpp
 * @brief Content-addressed disk cache for mobility curves.
 *
 * Each curve is keyed by a hash of everything that determines it: the tread
 * spec, the distance grid, the mesh level, and the wall extent. Entries are
 * plain CSV files named by their key and are never invalidated implicitly;
 * a parameter change produces a new key. The directory comes from
 * MORPHFLOW_CACHE_DIR when set, otherwise the user cache directory.
 */
#ifndef MORPHFLOW_CACHE_HPP
#define MORPHFLOW_CACHE_HPP

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "morphflow/aggregation.hpp"
#include "morphflow/outputs.hpp"
#include "morphflow/robot_specs.hpp"

namespace morphflow {

inline constexpr const char* cache_env_var = "MORPHFLOW_CACHE_DIR";

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

inline std::filesystem::path cache_dir() {
    if (const char* env = std::getenv(cache_env_var); env && *env)
        return std::filesystem::path(env);
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return std::filesystem::path(xdg) / "morphflow";
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::filesystem::path(home) / ".cache" / "morphflow";
    return std::filesystem::path(".morphflow-cache");
}

/// Key covering every input that shapes a mobility curve.
inline std::string mobility_cache_key(const TreadSphereSpec& spec,
                                      const std::vector<double>& grid, int level,
                                      double wall_extent) {
    std::string desc = "mobility|case=";
    desc += spec.geometry == TreadCase::wall ? "wall" : "two-spheres";
    const auto add = [&desc](const char* name, double v) {
        desc += '|';
        desc += name;
        desc += '=';
        desc += full_precision(v);
    };
    add("a", spec.a);
    add("v_tread", spec.v_tread);
    add("band", spec.band_area_fraction);
    add("ramp", spec.ramp_width);
    add("level", level);
    add("wall_extent", wall_extent);
    for (const double d : grid) add("d", d);
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(desc)));
    return std::string("mob-") + buf;
}

inline std::filesystem::path cache_entry_path(const std::string& key) {
    return cache_dir() / (key + ".csv");
}

/// Returns true and fills the curve when the key is present and readable.
inline bool cache_lookup(const std::string& key, TreadCase kind, double a, MobilityCurve* out) {
    const auto path = cache_entry_path(key);
    std::error_code ec;
    if (!std::filesystem::exists(path, ec) || ec) return false;
    *out = read_mobility_csv(path.string(), kind, a);
    return true;
}

inline void cache_store(const std::string& key, const MobilityCurve& curve) {
    std::filesystem::create_directories(cache_dir());
    write_mobility_csv(curve, cache_entry_path(key).string());
}

inline std::vector<std::string> cache_list() {
    std::vector<std::string> keys;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(cache_dir(), ec)) {
        if (entry.path().extension() == ".csv") keys.push_back(entry.path().stem().string());
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

inline std::size_t cache_clear() {
    std::size_t removed = 0;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(cache_dir(), ec)) {
        if (entry.path().extension() == ".csv" &&
            std::filesystem::remove(entry.path(), ec) && !ec)
            ++removed;
    }
    return removed;
}

}  // namespace morphflow

#endif  // MORPHFLOW_CACHE_HPP
