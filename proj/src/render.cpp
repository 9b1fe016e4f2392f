#include "mlc/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

#include "byte_io.hpp"
#include "mlc/error.hpp"

namespace mlc {
namespace {

constexpr int kCentre = kImageSize / 2;
// Farthest vertex lands at 48 * (1 - 1/48).
constexpr double kRadius = kCentre - 1.0;

void plot(ContextImage& img, int c, PixelPoint p) {
  if (p.x < 0 || p.y < 0 || p.x >= kImageSize || p.y >= kImageSize) return;
  img.at(c, p.y, p.x) = 1.0f;
}

void mark(ContextImage& img, int c, PixelPoint p, int side) {
  const int r = side / 2;
  for (int dy = -r; dy <= r; ++dy)
    for (int dx = -r; dx <= r; ++dx) plot(img, c, {p.x + dx, p.y + dy});
}

void line(ContextImage& img, int c, PixelPoint a, PixelPoint b) {
  for (const auto& p : bresenham(a, b)) plot(img, c, p);
}

std::uint64_t key(Vertex a, Vertex b) {
  const Edge e(a, b);
  return (static_cast<std::uint64_t>(e.u) << 32) | static_cast<std::uint32_t>(e.v);
}

}  // namespace

std::size_t ContextImage::lit(int channel) const {
  const auto first = data.begin() + static_cast<std::ptrdiff_t>(channel) * kImageSize * kImageSize;
  return static_cast<std::size_t>(
      std::count_if(first, first + kImageSize * kImageSize, [](float v) { return v != 0.0f; }));
}

std::vector<Vertex> local_view(const CandidateLists& cls, Vertex i, Vertex j) {
  std::vector<Vertex> view{i, j};
  for (const auto& nb : cls.of(i)) view.push_back(nb.vertex);
  for (const auto& nb : cls.of(j)) view.push_back(nb.vertex);
  std::sort(view.begin(), view.end());
  view.erase(std::unique(view.begin(), view.end()), view.end());
  return view;
}

std::vector<PixelPoint> project_view(const Instance& inst, std::span<const Vertex> view,
                                     Vertex i, Vertex j) {
  if (!inst.has_coords()) throw ContractError("rendering needs vertex coordinates");
  const auto& pts = inst.coords();
  const double cx = 0.5 * (pts[i].x + pts[j].x);
  const double cy = 0.5 * (pts[i].y + pts[j].y);
  double reach = 0.0;
  for (Vertex v : view) reach = std::max(reach, std::hypot(pts[v].x - cx, pts[v].y - cy));
  const double scale = reach > 0.0 ? kRadius / reach : 0.0;

  std::vector<PixelPoint> out;
  out.reserve(view.size());
  for (Vertex v : view) {
    const int px = static_cast<int>(std::floor(kCentre + (pts[v].x - cx) * scale));
    const int py = static_cast<int>(std::floor(kCentre + (pts[v].y - cy) * scale));
    out.push_back({std::clamp(px, 0, kImageSize - 1), std::clamp(py, 0, kImageSize - 1)});
  }
  return out;
}

ContextImage render_context(const Instance& inst, const CandidateLists& cls,
                            std::span<const Edge> drawn, Vertex i, Vertex j,
                            const RenderOptions& options) {
  const int n = inst.size();
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
    throw ContractError("render: invalid edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  if (options.mark < 1 || options.mark % 2 == 0) throw ContractError("render: mark side must be odd");

  const auto view = local_view(cls, i, j);
  const auto anchors = project_view(inst, view, i, j);
  auto anchor_of = [&](Vertex v) -> const PixelPoint* {
    const auto it = std::lower_bound(view.begin(), view.end(), v);
    if (it == view.end() || *it != v) return nullptr;
    return &anchors[static_cast<std::size_t>(it - view.begin())];
  };

  ContextImage img;
  for (const auto& p : anchors) mark(img, kRed, p, options.mark);

  const PixelPoint pi = *anchor_of(i);
  const PixelPoint pj = *anchor_of(j);
  line(img, kGreen, pi, pj);
  mark(img, kGreen, pi, options.mark);
  mark(img, kGreen, pj, options.mark);

  for (const Edge& e : drawn) {
    const PixelPoint* a = anchor_of(e.u);
    const PixelPoint* b = anchor_of(e.v);
    if (a && b) line(img, kBlue, *a, *b);
  }
  return img;
}

ContextImage render_context(const Instance& inst, const CandidateLists& cls,
                            const PartialSolution& ps, Vertex i, Vertex j,
                            const RenderOptions& options) {
  return render_context(inst, cls, std::span<const Edge>(ps.edges()), i, j, options);
}

std::vector<Edge> offline_edges(const PromisingList& lp, std::size_t index,
                                const std::vector<Vertex>& optimal_order) {
  std::unordered_set<std::uint64_t> opt;
  for (const Edge& e : tour_edges(optimal_order)) opt.insert(key(e.u, e.v));
  std::vector<Edge> out;
  for (std::size_t k = 0; k < std::min(index, lp.size()); ++k) {
    if (opt.contains(key(lp[k].i, lp[k].j))) out.push_back(lp[k].edge());
  }
  return out;
}

std::vector<PixelPoint> bresenham(PixelPoint a, PixelPoint b) {
  std::vector<PixelPoint> out;
  const int dx = std::abs(b.x - a.x);
  const int dy = -std::abs(b.y - a.y);
  const int sx = a.x < b.x ? 1 : -1;
  const int sy = a.y < b.y ? 1 : -1;
  int err = dx + dy;
  PixelPoint p = a;
  for (;;) {
    out.push_back(p);
    if (p == b) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      p.x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      p.y += sy;
    }
  }
  return out;
}

void write_ppm(std::ostream& out, const ContextImage& img) {
  out << "P6\n" << kImageSize << ' ' << kImageSize << "\n255\n";
  std::string bytes;
  bytes.reserve(static_cast<std::size_t>(kImageSize) * kImageSize * 3);
  for (int y = 0; y < kImageSize; ++y)
    for (int x = 0; x < kImageSize; ++x)
      for (int c = 0; c < kImageChannels; ++c) {
        const float v = std::clamp(img.at(c, y, x), 0.0f, 1.0f);
        bytes.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0f))));
      }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

void write_ppm_file(const std::filesystem::path& path, const ContextImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_ppm(out, img);
}

void write_blob(std::ostream& out, const ContextImage& img) {
  std::string bytes;
  detail::put_floats(bytes, img.data);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

void write_blob_file(const std::filesystem::path& path, const ContextImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_blob(out, img);
}

ContextImage read_blob(std::istream& in) {
  std::string bytes(kImageValues * 4, '\0');
  in.read(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
    throw Error("image blob holds fewer than " + std::to_string(kImageValues) + " floats");
  }
  ContextImage img;
  detail::get_floats(reinterpret_cast<const unsigned char*>(bytes.data()), kImageValues, img.data);
  return img;
}

ContextImage read_blob_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_blob(in);
}

}  // namespace mlc
