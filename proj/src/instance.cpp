#include "mlc/instance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mlc/error.hpp"

namespace mlc {

const char* to_string(EdgeWeightType type) noexcept {
  switch (type) {
    case EdgeWeightType::kEuc2D:
      return "EUC_2D";
    case EdgeWeightType::kEuc2DReal:
      return "EUC_2D_REAL";
    case EdgeWeightType::kGeo:
      return "GEO";
    case EdgeWeightType::kAtt:
      return "ATT";
    case EdgeWeightType::kExplicit:
      return "EXPLICIT";
  }
  return "?";
}

namespace {

double nint(double x) { return static_cast<double>(static_cast<long long>(x + 0.5)); }

// TSPLIB DDD.MM encoding to radians, with the reference value of pi.
double geo_radians(double coord) {
  constexpr double kPi = 3.141592;
  const double degrees = static_cast<double>(static_cast<long long>(coord));
  const double minutes = coord - degrees;
  return kPi * (degrees + 5.0 * minutes / 3.0) / 180.0;
}

}  // namespace

Cost euc2d_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return nint(std::sqrt(dx * dx + dy * dy));
}

Cost euc2d_real_distance(Point a, Point b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

Cost geo_distance(Point a, Point b) {
  constexpr double kRadius = 6378.388;
  const double lat_a = geo_radians(a.x);
  const double lon_a = geo_radians(a.y);
  const double lat_b = geo_radians(b.x);
  const double lon_b = geo_radians(b.y);
  const double q1 = std::cos(lon_a - lon_b);
  const double q2 = std::cos(lat_a - lat_b);
  const double q3 = std::cos(lat_a + lat_b);
  const double arg = std::clamp(0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3), -1.0, 1.0);
  return static_cast<double>(static_cast<long long>(kRadius * std::acos(arg) + 1.0));
}

Cost att_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double r = std::sqrt((dx * dx + dy * dy) / 10.0);
  const double t = nint(r);
  return t < r ? t + 1.0 : t;
}

Instance Instance::from_points(std::string name, std::vector<Point> coords,
                               EdgeWeightType type) {
  const int n = static_cast<int>(coords.size());
  if (n < 3) {
    throw ContractError("instance needs at least 3 vertices, got " + std::to_string(n));
  }
  Cost (*dist)(Point, Point) = nullptr;
  switch (type) {
    case EdgeWeightType::kEuc2D:
      dist = euc2d_distance;
      break;
    case EdgeWeightType::kEuc2DReal:
      dist = euc2d_real_distance;
      break;
    case EdgeWeightType::kGeo:
      dist = geo_distance;
      break;
    case EdgeWeightType::kAtt:
      dist = att_distance;
      break;
    case EdgeWeightType::kExplicit:
      throw ContractError("EXPLICIT instances are built from a matrix");
  }

  Instance inst;
  inst.name_ = std::move(name);
  inst.n_ = n;
  inst.type_ = type;
  inst.coords_ = std::move(coords);
  inst.matrix_.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      const Cost c = dist(inst.coords_[i], inst.coords_[j]);
      inst.matrix_[static_cast<std::size_t>(i) * n + j] = c;
      inst.matrix_[static_cast<std::size_t>(j) * n + i] = c;
    }
  }
  return inst;
}

Instance Instance::from_matrix(std::string name, std::vector<Cost> matrix, int n) {
  if (n < 3) {
    throw ContractError("instance needs at least 3 vertices, got " + std::to_string(n));
  }
  if (matrix.size() != static_cast<std::size_t>(n) * n) {
    throw ContractError("explicit matrix has wrong size");
  }
  for (int i = 0; i < n; ++i) {
    if (matrix[static_cast<std::size_t>(i) * n + i] != 0.0) {
      throw ContractError("explicit matrix has a nonzero diagonal");
    }
    for (int j = i + 1; j < n; ++j) {
      const Cost a = matrix[static_cast<std::size_t>(i) * n + j];
      const Cost b = matrix[static_cast<std::size_t>(j) * n + i];
      if (a != b || a < 0) {
        throw ContractError("explicit matrix must be symmetric and non-negative");
      }
    }
  }
  Instance inst;
  inst.name_ = std::move(name);
  inst.n_ = n;
  inst.type_ = EdgeWeightType::kExplicit;
  inst.matrix_ = std::move(matrix);
  return inst;
}

Cost Instance::cost(Vertex i, Vertex j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) {
    throw ContractError("vertex out of range");
  }
  if (i == j) {
    throw ContractError("cost of a self edge is undefined");
  }
  return (*this)(i, j);
}

bool is_permutation(std::span<const Vertex> order, int n) {
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (Vertex v : order) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

Cost tour_length(const Instance& inst, std::span<const Vertex> order) {
  if (!is_permutation(order, inst.size())) {
    throw ContractError("tour is not a permutation of the vertices");
  }
  Cost total = 0;
  const std::size_t n = order.size();
  for (std::size_t t = 0; t < n; ++t) {
    total += inst(order[t], order[(t + 1) % n]);
  }
  return total;
}

Tour make_tour(const Instance& inst, std::vector<Vertex> order) {
  Tour tour;
  tour.length = tour_length(inst, order);
  tour.order = std::move(order);
  return tour;
}

std::vector<Edge> tour_edges(std::span<const Vertex> order) {
  std::vector<Edge> edges;
  edges.reserve(order.size());
  for (std::size_t t = 0; t < order.size(); ++t) {
    edges.emplace_back(order[t], order[(t + 1) % order.size()]);
  }
  return edges;
}

double percentage_error(Cost length, Cost optimum) {
  if (!(optimum > 0)) {
    throw ContractError("reference optimum must be positive");
  }
  return 100.0 * (length - optimum) / optimum;
}

GapReport gap_report(const Instance& inst, const Tour& tour, Cost optimum) {
  return {inst.name(), tour.length, optimum, percentage_error(tour.length, optimum)};
}

}  // namespace mlc
