#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <unordered_set>
#include <vector>

#include "mlc/candidates.hpp"
#include "mlc/fragments.hpp"
#include "mlc/instance.hpp"

namespace mlc {

inline constexpr int kImageSize = 96;
inline constexpr int kImageChannels = 3;
inline constexpr std::size_t kImageValues =
    static_cast<std::size_t>(kImageChannels) * kImageSize * kImageSize;

enum Channel : int { kRed = 0, kGreen = 1, kBlue = 2 };

/// 3x96x96 float image, channel-major (CHW). Red holds the local-view
/// vertices, green the candidate edge, blue the already accepted edges.
struct ContextImage {
  std::vector<float> data = std::vector<float>(kImageValues, 0.0f);

  float& at(int c, int y, int x) {
    return data[(static_cast<std::size_t>(c) * kImageSize + y) * kImageSize + x];
  }
  float at(int c, int y, int x) const {
    return data[(static_cast<std::size_t>(c) * kImageSize + y) * kImageSize + x];
  }
  std::size_t lit(int channel) const;
  friend bool operator==(const ContextImage&, const ContextImage&) = default;
};

struct RenderOptions {
  int mark = 3;  // side of the square drawn around every vertex, odd
};

struct PixelPoint {
  int x = 0;
  int y = 0;
  friend bool operator==(const PixelPoint&, const PixelPoint&) = default;
};

/// CL[i] ∪ CL[j] ∪ {i, j}, ascending.
std::vector<Vertex> local_view(const CandidateLists& cls, Vertex i, Vertex j);

/// Pixel anchor of every vertex in `view`: the edge midpoint maps to the
/// image centre and the farthest view vertex to radius 47.
std::vector<PixelPoint> project_view(const Instance& inst, std::span<const Vertex> view,
                                     Vertex i, Vertex j);

/// Renders edge (i, j). Blue receives every edge of `drawn` whose endpoints
/// are both in the local view; the others are left out entirely.
ContextImage render_context(const Instance& inst, const CandidateLists& cls,
                            std::span<const Edge> drawn, Vertex i, Vertex j,
                            const RenderOptions& options = {});

/// Online rendering: blue shows the live partial solution.
ContextImage render_context(const Instance& inst, const CandidateLists& cls,
                            const PartialSolution& ps, Vertex i, Vertex j,
                            const RenderOptions& options = {});

/// Offline third channel: optimal edges among lp[0, index).
std::vector<Edge> offline_edges(const PromisingList& lp, std::size_t index,
                                const std::vector<Vertex>& optimal_order);

/// Integer line from a to b, both ends included.
std::vector<PixelPoint> bresenham(PixelPoint a, PixelPoint b);

void write_ppm(std::ostream& out, const ContextImage& img);
void write_ppm_file(const std::filesystem::path& path, const ContextImage& img);

/// Raw little-endian float32 values in CHW order, no header.
void write_blob(std::ostream& out, const ContextImage& img);
void write_blob_file(const std::filesystem::path& path, const ContextImage& img);
ContextImage read_blob(std::istream& in);
ContextImage read_blob_file(const std::filesystem::path& path);

}  // namespace mlc
