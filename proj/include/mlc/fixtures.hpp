#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "mlc/instance.hpp"
#include "mlc/render.hpp"

namespace mlc {

inline constexpr int kFixtureCount = 32;

/// One rendered edge with everything needed to redraw it elsewhere.
struct Fixture {
  Instance instance;
  int k = 0;
  Vertex i = 0;
  Vertex j = 0;
  std::vector<Edge> drawn;
  ContextImage image;
};

/// Deterministic set of rendered edges shared with the training side:
/// L_P edges of small random instances with earlier tour edges drawn in
/// blue, plus a few degenerate views (coincident points, an empty blue
/// channel, the first L_P entry).
std::vector<Fixture> fixture_set(std::uint64_t seed = 2024, int count = kFixtureCount);

/// fixtures.json (coordinates, k, edge, drawn edges, blob name) plus one
/// fixture_NN.blob per image.
void write_fixture_set(const std::filesystem::path& dir, const std::vector<Fixture>& fixtures);

/// Reads what write_fixture_set wrote; images come from the blobs.
std::vector<Fixture> read_fixture_set(const std::filesystem::path& dir);

}  // namespace mlc
