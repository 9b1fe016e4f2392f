#pragma once

#include <cstdint>
#include <vector>

#include "mlc/fragments.hpp"
#include "mlc/instance.hpp"

namespace mlc {

/// Greedy single-fragment tour from `start`; ties go to the smaller index.
Tour nearest_neighbor(const Instance& inst, Vertex start = 0);

/// Greedy edge (multi-fragment): every edge by ascending cost, ties by
/// (u, v), added whenever the partial solution allows it.
Tour multi_fragment(const Instance& inst, TrackerMode mode = TrackerMode::kEndpointMap,
                    std::uint64_t* probes = nullptr);

/// Total distance from every vertex to all others.
std::vector<Cost> total_distances(const Instance& inst);

/// argmin of total_distances, ties to the smaller index.
Vertex hub_vertex(const Instance& inst);

/// s_ij = c_ih + c_hj - c_ij.
inline Cost saving(const Instance& inst, Vertex hub, Vertex i, Vertex j) {
  return inst(i, hub) + inst(hub, j) - inst(i, j);
}

struct SavingsEdge {
  Edge edge;
  Cost saving = 0;
  Cost cost = 0;
};

/// Edges whose endpoints are both free in `ps` (and not already accepted),
/// sorted by descending saving, then ascending cost, then (u, v).
std::vector<SavingsEdge> sorted_savings(const Instance& inst, const PartialSolution& ps,
                                        Vertex hub);

/// Completes `ps` into a tour by greedy addition over sorted_savings with the
/// hub computed over all vertices. Shared by clarke_wright and the second
/// phase of ml_constructive.
void complete_with_savings(const Instance& inst, PartialSolution& ps);

/// Clarke-Wright savings constructor: complete_with_savings from an empty
/// partial solution.
Tour clarke_wright(const Instance& inst, TrackerMode mode = TrackerMode::kEndpointMap);

}  // namespace mlc
