#include "mlc/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mlc/error.hpp"

namespace mlc {
namespace {

using nlohmann::json;

ManifestEntry entry_from(const json& j, const std::filesystem::path& base) {
  if (!j.is_object()) throw ParseError(ParseErrorKind::kMalformed, "manifest entries must be objects");
  if (!j.contains("name") || !j["name"].is_string()) {
    throw ParseError(ParseErrorKind::kMalformed, "manifest entry without a string \"name\"");
  }
  ManifestEntry e;
  e.name = j["name"].get<std::string>();
  if (j.contains("optimum") && !j["optimum"].is_null()) {
    if (!j["optimum"].is_number()) {
      throw ParseError(ParseErrorKind::kMalformed, "optimum of " + e.name + " is not a number");
    }
    e.optimum = j["optimum"].get<double>();
  }
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
  };
  e.tsp = resolve(j.value("tsp", e.name + ".tsp"));
  for (const char* k : {"opt_tour", "opt-tour"}) {
    if (j.contains(k) && j[k].is_string()) e.opt_tour = resolve(j[k].get<std::string>());
  }
  return e;
}

}  // namespace

bool ManifestEntry::present() const { return std::filesystem::is_regular_file(tsp); }

std::vector<ManifestEntry> parse_manifest(const std::string& text,
                                          const std::filesystem::path& base_dir) {
  std::vector<ManifestEntry> out;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return out;
  try {
    if (text[first] == '[') {
      for (const auto& j : json::parse(text)) out.push_back(entry_from(j, base_dir));
      return out;
    }
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      out.push_back(entry_from(json::parse(line), base_dir));
    }
  } catch (const json::exception& ex) {
    throw ParseError(ParseErrorKind::kMalformed, std::string("manifest: ") + ex.what());
  }
  return out;
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(ParseErrorKind::kIo, "cannot open manifest " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str(), path.parent_path());
}

}  // namespace mlc
