#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mlc/instance.hpp"

namespace mlc {

enum class Verdict { kOk, kDegreeViolation, kInnerLoop };

const char* to_string(Verdict v) noexcept;

// How check() decides whether two degree-1 vertices end the same fragment.
enum class TrackerMode {
  kEndpointMap,    // O(1): every fragment endpoint stores its opposite endpoint
  kFragmentScan,   // walks the fragment from one end, memoised per epoch
};

/// Set of vertex-disjoint simple paths grown one edge at a time, closing
/// into a Hamiltonian cycle with the n-th edge.
///
/// Invariants: degree <= 2 everywhere; no cycle while epoch() < n;
/// mate() is an involution on fragment endpoints.
class PartialSolution {
 public:
  explicit PartialSolution(int n, TrackerMode mode = TrackerMode::kEndpointMap);

  int size() const { return n_; }
  TrackerMode mode() const { return mode_; }

  /// Verdict for adding edge (i, j). Degree is tested first, so an edge into
  /// a fragment interior is always kDegreeViolation. The closing edge is
  /// accepted only when it completes a Hamiltonian cycle.
  Verdict check(Vertex i, Vertex j) const;

  /// Adds (i, j); throws ContractError unless check(i, j) is kOk.
  void accept(Vertex i, Vertex j);

  /// Equivalent to check() followed by accept() on kOk.
  Verdict try_accept(Vertex i, Vertex j);

  int degree(Vertex v) const { return degree_[v]; }

  /// Opposite endpoint of v's fragment when v is a degree-1 endpoint, else -1.
  Vertex mate(Vertex v) const { return mate_[v]; }

  /// Accepted-edge count (the epoch t).
  int epoch() const { return static_cast<int>(edges_.size()); }
  bool complete() const { return epoch() == n_; }

  const std::vector<Edge>& edges() const { return edges_; }
  const std::array<Vertex, 2>& neighbors(Vertex v) const { return adj_[v]; }
  bool has_edge(Vertex i, Vertex j) const;

  std::vector<Vertex> free_vertices() const;

  /// Number of fragments (paths with at least one edge).
  int fragment_count() const;

  /// Tracker work so far: endpoint-map lookups or fragment-scan steps.
  std::uint64_t probes() const { return probes_; }

  /// Cyclic vertex order of a complete solution, starting at vertex 0.
  std::vector<Vertex> tour_order() const;

 private:
  bool same_fragment(Vertex i, Vertex j) const;
  Vertex scan_to_end(Vertex from) const;

  int n_;
  TrackerMode mode_;
  std::vector<std::uint8_t> degree_;
  std::vector<Vertex> mate_;
  std::vector<std::array<Vertex, 2>> adj_;
  std::vector<Edge> edges_;
  mutable std::uint64_t probes_ = 0;
  mutable std::vector<Vertex> scan_end_;
  mutable std::vector<int> scan_epoch_;
};

}  // namespace mlc
