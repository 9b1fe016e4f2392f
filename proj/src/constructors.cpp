#include "mlc/constructors.hpp"

#include <algorithm>
#include <limits>

#include "mlc/error.hpp"

namespace mlc {

Tour nearest_neighbor(const Instance& inst, Vertex start) {
  const int n = inst.size();
  if (start < 0 || start >= n) throw ContractError("start vertex out of range");
  std::vector<char> visited(n, 0);
  std::vector<Vertex> order;
  order.reserve(n);
  Vertex cur = start;
  visited[cur] = 1;
  order.push_back(cur);
  for (int step = 1; step < n; ++step) {
    const auto row = inst.row(cur);
    Vertex best = -1;
    Cost best_cost = std::numeric_limits<Cost>::infinity();
    for (Vertex j = 0; j < n; ++j) {
      if (!visited[j] && row[j] < best_cost) {
        best = j;
        best_cost = row[j];
      }
    }
    visited[best] = 1;
    order.push_back(best);
    cur = best;
  }
  return make_tour(inst, std::move(order));
}

namespace {

struct CostEdge {
  Cost cost;
  Vertex u;
  Vertex v;
};

Tour finish(const Instance& inst, const PartialSolution& ps) {
  if (!ps.complete()) throw InternalError("edge list exhausted before the tour was complete");
  return make_tour(inst, ps.tour_order());
}

}  // namespace

Tour multi_fragment(const Instance& inst, TrackerMode mode, std::uint64_t* probes) {
  const int n = inst.size();
  std::vector<CostEdge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (Vertex u = 0; u < n; ++u) {
    const auto row = inst.row(u);
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({row[v], u, v});
  }
  std::sort(edges.begin(), edges.end(), [](const CostEdge& a, const CostEdge& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });
  PartialSolution ps(n, mode);
  for (const auto& e : edges) {
    ps.try_accept(e.u, e.v);
    if (ps.complete()) break;
  }
  if (probes) *probes = ps.probes();
  return finish(inst, ps);
}

std::vector<Cost> total_distances(const Instance& inst) {
  const int n = inst.size();
  std::vector<Cost> td(n, 0.0);
  for (Vertex i = 0; i < n; ++i) {
    Cost sum = 0;
    for (Cost c : inst.row(i)) sum += c;
    td[i] = sum;
  }
  return td;
}

Vertex hub_vertex(const Instance& inst) {
  const auto td = total_distances(inst);
  return static_cast<Vertex>(std::min_element(td.begin(), td.end()) - td.begin());
}

std::vector<SavingsEdge> sorted_savings(const Instance& inst, const PartialSolution& ps,
                                        Vertex hub) {
  const auto free = ps.free_vertices();
  std::vector<SavingsEdge> list;
  list.reserve(free.size() * (free.size() - 1) / 2);
  for (std::size_t a = 0; a < free.size(); ++a) {
    for (std::size_t b = a + 1; b < free.size(); ++b) {
      const Vertex u = free[a];
      const Vertex v = free[b];
      if (ps.has_edge(u, v)) continue;
      list.push_back({Edge(u, v), saving(inst, hub, u, v), inst(u, v)});
    }
  }
  std::sort(list.begin(), list.end(), [](const SavingsEdge& a, const SavingsEdge& b) {
    if (a.saving != b.saving) return a.saving > b.saving;
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.edge < b.edge;
  });
  return list;
}

void complete_with_savings(const Instance& inst, PartialSolution& ps) {
  if (ps.complete()) return;
  const Vertex hub = hub_vertex(inst);
  const auto list = sorted_savings(inst, ps, hub);
  for (const auto& e : list) {
    ps.try_accept(e.edge.u, e.edge.v);
    if (ps.complete()) return;
  }
  throw InternalError("savings list exhausted before the tour was complete");
}

Tour clarke_wright(const Instance& inst, TrackerMode mode) {
  PartialSolution ps(inst.size(), mode);
  complete_with_savings(inst, ps);
  return finish(inst, ps);
}

}  // namespace mlc
