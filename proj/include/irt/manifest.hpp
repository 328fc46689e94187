#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "irt/image.hpp"

namespace irt {

// The four surveillance conditions. Order here fixes report column order.
enum class Environment { night, snowy, shelter, rainy };

inline constexpr std::array<Environment, 4> kEnvironments = {
    Environment::night, Environment::snowy, Environment::shelter, Environment::rainy};

std::string to_string(Environment e);
Environment parse_environment(const std::string& s); // throws DataError, names the closed set

enum class Split { training, test };

std::string to_string(Split s);
Split parse_split(const std::string& s);

struct TruthTarget {
    std::string class_id;
    Box bbox;
};

// One JSON-lines record: image path (also the unique id), optional template
// path, environment, split, ground-truth targets.
struct ManifestEntry {
    std::string image;
    std::optional<std::string> template_path;
    Environment environment = Environment::night;
    Split split = Split::training;
    std::vector<TruthTarget> targets;
};

struct Manifest {
    std::vector<ManifestEntry> entries;
};

// Strict parse: one JSON object per non-empty line; duplicate image ids,
// unknown environments/splits and malformed records are rejected with the
// offending line number. With check_paths set, referenced files must exist
// and every bbox must fit inside its image.
Manifest parse_manifest(const std::filesystem::path& path, bool check_paths = true);
Manifest parse_manifest_text(const std::string& text,
                             const std::filesystem::path& base_dir,
                             bool check_paths);

// Canonical re-emission; write(parse(x)) is byte-identical for canonical x.
std::string write_manifest(const Manifest& m);
void write_manifest(const Manifest& m, const std::filesystem::path& path);

// Image counts per class, environment and split, environments as columns.
std::string manifest_summary(const Manifest& m);

} // namespace irt
