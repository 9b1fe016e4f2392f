#include "mlc/candidates.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "mlc/error.hpp"

namespace mlc {

int CandidateLists::position(Vertex i, Vertex j) const {
  const auto list = of(i);
  for (std::size_t p = 0; p < list.size(); ++p) {
    if (list[p].vertex == j) return static_cast<int>(p) + 1;
  }
  return 0;
}

CandidateLists build_candidate_lists(const Instance& inst, int k,
                                     std::uint64_t* cost_evaluations) {
  const int n = inst.size();
  if (k < 1) throw ContractError("candidate list size must be >= 1, got " + std::to_string(k));
  k = std::min(k, n - 1);

  auto closer = [](const Neighbor& a, const Neighbor& b) {
    return a.cost != b.cost ? a.cost < b.cost : a.vertex < b.vertex;
  };

  std::vector<Neighbor> flat(static_cast<std::size_t>(n) * k);
  std::vector<Neighbor> row;
  row.reserve(n - 1);
  std::uint64_t evaluations = 0;
  for (Vertex i = 0; i < n; ++i) {
    row.clear();
    const auto costs = inst.row(i);
    for (Vertex j = 0; j < n; ++j) {
      if (j == i) continue;
      row.push_back({j, costs[j]});
    }
    evaluations += row.size();
    std::partial_sort(row.begin(), row.begin() + k, row.end(), closer);
    std::copy_n(row.begin(), k, flat.begin() + static_cast<std::ptrdiff_t>(i) * k);
  }
  if (cost_evaluations) *cost_evaluations = evaluations;
  return CandidateLists(n, k, std::move(flat));
}

PromisingList build_promising_list(const CandidateLists& cls, int m) {
  if (m < 1 || m > cls.k()) {
    throw ContractError("promising depth m must be in 1..k, got " + std::to_string(m));
  }
  PromisingList raw;
  raw.reserve(static_cast<std::size_t>(cls.size()) * m);
  for (Vertex i = 0; i < cls.size(); ++i) {
    const auto list = cls.of(i);
    for (int p = 0; p < m; ++p) {
      raw.push_back({i, list[p].vertex, p + 1, list[p].cost});
    }
  }

  // Dedup on the unordered pair: the surviving copy has the smallest
  // position, then the smaller owner.
  std::sort(raw.begin(), raw.end(), [](const PromisingEntry& a, const PromisingEntry& b) {
    const Edge ea = a.edge();
    const Edge eb = b.edge();
    if (ea != eb) return ea < eb;
    if (a.position != b.position) return a.position < b.position;
    return a.i < b.i;
  });
  PromisingList unique;
  unique.reserve(raw.size());
  for (const auto& e : raw) {
    if (unique.empty() || unique.back().edge() != e.edge()) unique.push_back(e);
  }

  std::sort(unique.begin(), unique.end(), [](const PromisingEntry& a, const PromisingEntry& b) {
    if (a.position != b.position) return a.position < b.position;
    if (a.cost != b.cost) return a.cost < b.cost;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  return unique;
}

void write_promising_csv(std::ostream& out, const PromisingList& list) {
  out << "i,j,position,cost\n";
  for (const auto& e : list) {
    out << e.i << ',' << e.j << ',' << e.position << ',' << e.cost << '\n';
  }
}

}  // namespace mlc
