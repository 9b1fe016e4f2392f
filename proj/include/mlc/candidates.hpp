#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "mlc/instance.hpp"

namespace mlc {

inline constexpr int kDefaultCandidates = 30;
inline constexpr int kDefaultPromising = 2;

struct Neighbor {
  Vertex vertex = 0;
  Cost cost = 0;
};

/// The k nearest vertices of every vertex, ascending by cost with ties broken
/// by smaller vertex index.
class CandidateLists {
 public:
  CandidateLists() = default;
  CandidateLists(int n, int k, std::vector<Neighbor> flat)
      : n_(n), k_(k), flat_(std::move(flat)) {}

  int size() const { return n_; }
  int k() const { return k_; }

  std::span<const Neighbor> of(Vertex i) const {
    return {flat_.data() + static_cast<std::size_t>(i) * k_, static_cast<std::size_t>(k_)};
  }

  /// 1-based rank of j in CL[i], or 0 if j is not among the k nearest.
  int position(Vertex i, Vertex j) const;

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<Neighbor> flat_;
};

/// `k` is clamped to n-1 when it exceeds it (k defaults to 30, small
/// instances get the complete list); k < 1 throws ContractError.
/// `cost_evaluations`, when given, receives the number of pair costs read.
CandidateLists build_candidate_lists(const Instance& inst, int k = kDefaultCandidates,
                                     std::uint64_t* cost_evaluations = nullptr);

struct PromisingEntry {
  Vertex i = 0;      // owner: the vertex whose CL ranks j at `position`
  Vertex j = 0;
  int position = 1;  // 1-based
  Cost cost = 0;

  Edge edge() const { return Edge(i, j); }
};

using PromisingList = std::vector<PromisingEntry>;

/// First `m` edges of every CL, deduplicated on the unordered pair (keeping
/// the smallest position, then the smaller owner), sorted by position, then
/// ascending cost, then (i, j).
PromisingList build_promising_list(const CandidateLists& cls, int m = kDefaultPromising);

/// CSV debug dump: header `i,j,position,cost`, 0-based vertex ids.
void write_promising_csv(std::ostream& out, const PromisingList& list);

}  // namespace mlc
