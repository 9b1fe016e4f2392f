#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mlc {

using Vertex = std::int32_t;

// Costs are doubles so that one type covers both the TSPLIB integer
// conventions (always integral, exact below 2^53) and the continuous
// unit-square instances.
using Cost = double;

enum class EdgeWeightType {
  kEuc2D,      // nint of euclidean distance
  kEuc2DReal,  // exact euclidean distance, generated instances only
  kGeo,
  kAtt,
  kExplicit,
};

const char* to_string(EdgeWeightType type) noexcept;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Undirected edge, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Distance rules, one per coordinate-based EdgeWeightType.
Cost euc2d_distance(Point a, Point b);
Cost euc2d_real_distance(Point a, Point b);
Cost geo_distance(Point a, Point b);
Cost att_distance(Point a, Point b);

/// Symmetric TSP instance. Immutable once built; the full cost matrix is
/// materialised at construction.
class Instance {
 public:
  static Instance from_points(std::string name, std::vector<Point> coords,
                              EdgeWeightType type);

  /// `matrix` is row-major n*n and must be symmetric with a zero diagonal.
  static Instance from_matrix(std::string name, std::vector<Cost> matrix,
                              int n);

  const std::string& name() const { return name_; }
  int size() const { return n_; }
  EdgeWeightType edge_weight_type() const { return type_; }
  bool has_coords() const { return !coords_.empty(); }
  const std::vector<Point>& coords() const { return coords_; }

  /// Checked accessor: throws ContractError on i == j or out of range.
  Cost cost(Vertex i, Vertex j) const;

  /// Unchecked accessor for hot loops; cost(i, i) is 0.
  Cost operator()(Vertex i, Vertex j) const {
    return matrix_[static_cast<std::size_t>(i) * n_ + j];
  }

  std::span<const Cost> row(Vertex i) const {
    return {matrix_.data() + static_cast<std::size_t>(i) * n_,
            static_cast<std::size_t>(n_)};
  }

 private:
  Instance() = default;

  std::string name_;
  int n_ = 0;
  EdgeWeightType type_ = EdgeWeightType::kEuc2D;
  std::vector<Point> coords_;
  std::vector<Cost> matrix_;
};

struct Tour {
  std::vector<Vertex> order;
  Cost length = 0;
};

/// True iff `order` is a permutation of 0..n-1.
bool is_permutation(std::span<const Vertex> order, int n);

/// Cyclic length; throws ContractError if `order` is not a permutation.
Cost tour_length(const Instance& inst, std::span<const Vertex> order);

Tour make_tour(const Instance& inst, std::vector<Vertex> order);

/// The n undirected edges of a cyclic tour.
std::vector<Edge> tour_edges(std::span<const Vertex> order);

/// 100 * (length - opt) / opt. Throws ContractError for opt <= 0.
double percentage_error(Cost length, Cost optimum);

struct GapReport {
  std::string instance;
  Cost length = 0;
  Cost optimum = 0;
  double gap = 0;
};

GapReport gap_report(const Instance& inst, const Tour& tour, Cost optimum);

}  // namespace mlc
