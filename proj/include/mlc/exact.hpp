#pragma once

#include "mlc/instance.hpp"

namespace mlc {

inline constexpr int kHeldKarpMaxN = 18;

/// Exact optimum by bitmask dynamic programming; n <= 18 or ContractError.
/// The tour starts at vertex 0; among equal optima the DP keeps the first
/// predecessor found.
Tour held_karp(const Instance& inst);

/// 2-opt descent (first improvement, repeated passes) to a local optimum.
Tour two_opt(const Instance& inst, Tour tour);

/// Optimal tour for n <= 18, else the best 2-opt descent from `starts`
/// nearest-neighbour tours with evenly spread start vertices.
struct ReferenceTour {
  Tour tour;
  bool exact = false;
};
ReferenceTour reference_tour(const Instance& inst, int starts = 10);

}  // namespace mlc
