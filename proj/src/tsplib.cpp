#include "mlc/tsplib.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string_view>

#include "mlc/error.hpp"

namespace mlc {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

bool starts_numeric(const std::string& line) {
  if (line.empty()) return false;
  const char c = line.front();
  return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
}

[[noreturn]] void fail(ParseErrorKind kind, const std::string& detail) {
  throw ParseError(kind, std::string(to_string(kind)) + ": " + detail);
}

std::optional<EdgeWeightType> edge_weight_type_from(const std::string& value) {
  if (value == "EUC_2D") return EdgeWeightType::kEuc2D;
  if (value == "EUC_2D_REAL") return EdgeWeightType::kEuc2DReal;
  if (value == "GEO") return EdgeWeightType::kGeo;
  if (value == "ATT") return EdgeWeightType::kAtt;
  if (value == "EXPLICIT") return EdgeWeightType::kExplicit;
  return std::nullopt;
}

double to_number(const std::string& token) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) fail(ParseErrorKind::kMalformed, "bad number '" + token + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(ParseErrorKind::kMalformed, "bad number '" + token + "'");
  }
}

std::vector<Cost> expand_explicit(const std::vector<double>& values,
                                  const std::string& format, int n) {
  std::vector<Cost> m(static_cast<std::size_t>(n) * n, 0.0);
  auto set = [&](int i, int j, double v) {
    m[static_cast<std::size_t>(i) * n + j] = v;
    m[static_cast<std::size_t>(j) * n + i] = v;
  };
  std::size_t expected = 0;
  if (format == "FULL_MATRIX") {
    expected = static_cast<std::size_t>(n) * n;
  } else if (format == "UPPER_ROW" || format == "LOWER_ROW") {
    expected = static_cast<std::size_t>(n) * (n - 1) / 2;
  } else if (format == "UPPER_DIAG_ROW" || format == "LOWER_DIAG_ROW") {
    expected = static_cast<std::size_t>(n) * (n + 1) / 2;
  } else {
    fail(ParseErrorKind::kMalformed, "unsupported EDGE_WEIGHT_FORMAT " + format);
  }
  if (values.size() != expected) {
    fail(ParseErrorKind::kCoordinateCountMismatch,
         "EDGE_WEIGHT_SECTION has " + std::to_string(values.size()) + " values, expected " +
             std::to_string(expected));
  }
  std::size_t k = 0;
  if (format == "FULL_MATRIX") {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i) * n + j] = values[k++];
  } else if (format == "UPPER_ROW") {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) set(i, j, values[k++]);
  } else if (format == "LOWER_ROW") {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) set(i, j, values[k++]);
  } else if (format == "UPPER_DIAG_ROW") {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) set(i, j, values[k++]);
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) set(i, j, values[k++]);
  }
  return m;
}

}  // namespace

Instance parse_tsplib(std::istream& in) {
  std::string name = "unnamed";
  std::optional<int> dimension;
  std::optional<EdgeWeightType> type;
  std::string weight_format = "FULL_MATRIX";
  std::vector<Point> coords;
  std::vector<char> seen;
  std::vector<double> weights;
  bool have_coords = false;
  bool have_weights = false;

  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(trim(line));

  auto require_dimension = [&]() -> int {
    if (!dimension) fail(ParseErrorKind::kMissingDimension, "no DIMENSION before data section");
    return *dimension;
  };

  std::size_t li = 0;
  while (li < lines.size()) {
    const std::string& line = lines[li];
    if (line.empty()) {
      ++li;
      continue;
    }
    const auto colon = line.find(':');
    const std::string keyword =
        upper(trim(colon == std::string::npos ? std::string_view(line)
                                              : std::string_view(line).substr(0, colon)));
    const std::string value =
        colon == std::string::npos ? std::string() : trim(std::string_view(line).substr(colon + 1));
    ++li;

    if (keyword == "EOF") break;
    if (keyword == "NAME") {
      name = value;
    } else if (keyword == "TYPE") {
      const std::string t = upper(value);
      if (t != "TSP") fail(ParseErrorKind::kUnsupportedProblemType, value);
    } else if (keyword == "DIMENSION") {
      const double d = to_number(value);
      if (d < 3 || d != static_cast<int>(d)) {
        fail(ParseErrorKind::kMalformed, "DIMENSION must be an integer >= 3");
      }
      dimension = static_cast<int>(d);
    } else if (keyword == "EDGE_WEIGHT_TYPE") {
      type = edge_weight_type_from(upper(value));
      if (!type) fail(ParseErrorKind::kUnsupportedEdgeWeightType, value);
    } else if (keyword == "EDGE_WEIGHT_FORMAT") {
      weight_format = upper(value);
    } else if (keyword == "NODE_COORD_SECTION") {
      const int n = require_dimension();
      coords.assign(n, Point{});
      seen.assign(n, 0);
      int count = 0;
      for (; li < lines.size(); ++li) {
        const std::string& row = lines[li];
        if (row.empty()) continue;
        if (!starts_numeric(row)) break;
        std::istringstream fields(row);
        std::string id_s, x_s, y_s;
        if (!(fields >> id_s >> x_s >> y_s)) {
          fail(ParseErrorKind::kMalformed, "coordinate line '" + row + "'");
        }
        const double id = to_number(id_s);
        const int idx = static_cast<int>(id) - 1;
        if (idx < 0 || idx >= n || id != static_cast<int>(id)) {
          fail(ParseErrorKind::kCoordinateCountMismatch,
               "node id " + id_s + " outside 1.." + std::to_string(n));
        }
        if (seen[idx]) fail(ParseErrorKind::kMalformed, "duplicate node id " + id_s);
        seen[idx] = 1;
        coords[idx] = Point{to_number(x_s), to_number(y_s)};
        ++count;
      }
      if (count != n) {
        fail(ParseErrorKind::kCoordinateCountMismatch,
             "DIMENSION is " + std::to_string(n) + " but " + std::to_string(count) +
                 " coordinates were given");
      }
      have_coords = true;
    } else if (keyword == "EDGE_WEIGHT_SECTION") {
      require_dimension();
      for (; li < lines.size(); ++li) {
        const std::string& row = lines[li];
        if (row.empty()) continue;
        if (!starts_numeric(row)) break;
        std::istringstream fields(row);
        for (std::string tok; fields >> tok;) weights.push_back(to_number(tok));
      }
      have_weights = true;
    } else if (keyword == "DISPLAY_DATA_SECTION" || keyword == "FIXED_EDGES_SECTION") {
      for (; li < lines.size(); ++li) {
        if (!lines[li].empty() && !starts_numeric(lines[li])) break;
      }
    }
    // Any other keyword (COMMENT, DISPLAY_DATA_TYPE, ...) is harmless.
  }

  const int n = require_dimension();
  if (!type) type = have_weights ? EdgeWeightType::kExplicit : EdgeWeightType::kEuc2D;

  if (*type == EdgeWeightType::kExplicit) {
    if (!have_weights) fail(ParseErrorKind::kMalformed, "EXPLICIT instance without EDGE_WEIGHT_SECTION");
    return Instance::from_matrix(name, expand_explicit(weights, weight_format, n), n);
  }
  if (!have_coords) {
    fail(ParseErrorKind::kCoordinateCountMismatch, "no NODE_COORD_SECTION");
  }
  return Instance::from_points(name, std::move(coords), *type);
}

Instance parse_tsplib_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(ParseErrorKind::kIo, "cannot open " + path.string());
  return parse_tsplib(in);
}

void write_tsplib(std::ostream& out, const Instance& inst) {
  if (!inst.has_coords()) throw ContractError("write_tsplib needs a coordinate instance");
  out << "NAME : " << inst.name() << "\n"
      << "TYPE : TSP\n"
      << "DIMENSION : " << inst.size() << "\n"
      << "EDGE_WEIGHT_TYPE : " << to_string(inst.edge_weight_type()) << "\n"
      << "NODE_COORD_SECTION\n";
  char buf[96];
  for (int i = 0; i < inst.size(); ++i) {
    const Point p = inst.coords()[i];
    std::snprintf(buf, sizeof(buf), "%d %.17g %.17g\n", i + 1, p.x, p.y);
    out << buf;
  }
  out << "EOF\n";
}

std::vector<Vertex> parse_tour(std::istream& in) {
  std::vector<Vertex> order;
  std::optional<int> dimension;
  std::string line;
  bool in_section = false;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (!in_section) {
      const auto colon = t.find(':');
      const std::string key = upper(trim(colon == std::string::npos
                                             ? std::string_view(t)
                                             : std::string_view(t).substr(0, colon)));
      if (key == "TOUR_SECTION") {
        in_section = true;
      } else if (key == "DIMENSION" && colon != std::string::npos) {
        dimension = static_cast<int>(to_number(trim(std::string_view(t).substr(colon + 1))));
      } else if (key == "EOF") {
        break;
      }
      continue;
    }
    std::istringstream fields(t);
    bool done = false;
    for (std::string tok; fields >> tok;) {
      if (!starts_numeric(tok)) {
        done = true;
        break;
      }
      const double v = to_number(tok);
      if (v == -1) {
        done = true;
        break;
      }
      order.push_back(static_cast<Vertex>(v) - 1);
    }
    if (done) break;
  }
  if (!in_section) fail(ParseErrorKind::kMalformed, "no TOUR_SECTION");
  if (dimension && *dimension != static_cast<int>(order.size())) {
    fail(ParseErrorKind::kCoordinateCountMismatch,
         "tour DIMENSION " + std::to_string(*dimension) + " but " +
             std::to_string(order.size()) + " entries");
  }
  return order;
}

std::vector<Vertex> parse_tour_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(ParseErrorKind::kIo, "cannot open " + path.string());
  return parse_tour(in);
}

void write_tour(std::ostream& out, const std::string& name, const Tour& tour) {
  out << "NAME : " << name << ".tour\n"
      << "TYPE : TOUR\n"
      << "COMMENT : length " << static_cast<long long>(tour.length) << "\n"
      << "DIMENSION : " << tour.order.size() << "\n"
      << "TOUR_SECTION\n";
  for (Vertex v : tour.order) out << v + 1 << "\n";
  out << "-1\nEOF\n";
}

void write_tour_file(const std::filesystem::path& path, const std::string& name,
                     const Tour& tour) {
  std::ofstream out(path);
  if (!out) throw ParseError(ParseErrorKind::kIo, "cannot write " + path.string());
  write_tour(out, name, tour);
}

}  // namespace mlc
