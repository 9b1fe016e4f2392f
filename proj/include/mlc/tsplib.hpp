#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mlc/instance.hpp"

namespace mlc {

/// Parses a TSPLIB .tsp stream. Supports EUC_2D, GEO, ATT, EXPLICIT
/// (FULL_MATRIX and the row/diag-row triangular formats) plus the
/// non-standard EUC_2D_REAL used for generated instances. Throws ParseError.
Instance parse_tsplib(std::istream& in);
Instance parse_tsplib_file(const std::filesystem::path& path);

/// Writes a coordinate instance as TSPLIB text. Coordinates are printed with
/// round-trip precision so a re-parse reproduces every cost bit for bit.
void write_tsplib(std::ostream& out, const Instance& inst);

/// Reads the TOUR_SECTION of a .tour/.opt.tour stream; returns 0-based ids.
std::vector<Vertex> parse_tour(std::istream& in);
std::vector<Vertex> parse_tour_file(const std::filesystem::path& path);

/// TOUR_SECTION with 1-based ids and a -1 terminator.
void write_tour(std::ostream& out, const std::string& name, const Tour& tour);
void write_tour_file(const std::filesystem::path& path, const std::string& name,
                     const Tour& tour);

}  // namespace mlc
