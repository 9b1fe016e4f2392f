#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace mlc {

/// One benchmark instance. Paths are absolute or relative to the manifest.
struct ManifestEntry {
  std::string name;
  std::optional<double> optimum;
  std::filesystem::path tsp;
  std::optional<std::filesystem::path> opt_tour;

  bool present() const;
};

/// Reads a JSON array or JSON-lines file of {"name", "optimum", "tsp",
/// "opt_tour"} objects. Only "name" is required; "tsp" defaults to
/// "<name>.tsp". Throws ParseError.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

std::vector<ManifestEntry> parse_manifest(const std::string& text,
                                          const std::filesystem::path& base_dir);

}  // namespace mlc
