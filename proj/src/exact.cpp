#include "mlc/exact.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "mlc/constructors.hpp"
#include "mlc/error.hpp"

namespace mlc {

Tour held_karp(const Instance& inst) {
  const int n = inst.size();
  if (n > kHeldKarpMaxN) {
    throw ContractError("Held-Karp is limited to n <= " + std::to_string(kHeldKarpMaxN));
  }
  // Vertex 0 is the fixed start; subsets range over vertices 1..n-1.
  const int m = n - 1;
  const std::size_t subsets = std::size_t{1} << m;
  constexpr Cost kInf = std::numeric_limits<Cost>::infinity();
  std::vector<Cost> dp(subsets * m, kInf);
  std::vector<std::int8_t> parent(subsets * m, -1);
  auto at = [m](std::size_t set, int last) { return set * m + last; };

  for (int v = 0; v < m; ++v) dp[at(std::size_t{1} << v, v)] = inst(0, v + 1);
  for (std::size_t set = 1; set < subsets; ++set) {
    for (int last = 0; last < m; ++last) {
      if (!(set >> last & 1)) continue;
      const Cost base = dp[at(set, last)];
      if (base == kInf) continue;
      for (int next = 0; next < m; ++next) {
        if (set >> next & 1) continue;
        const std::size_t grown = set | (std::size_t{1} << next);
        const Cost c = base + inst(last + 1, next + 1);
        if (c < dp[at(grown, next)]) {
          dp[at(grown, next)] = c;
          parent[at(grown, next)] = static_cast<std::int8_t>(last);
        }
      }
    }
  }

  const std::size_t full = subsets - 1;
  int last = 0;
  Cost best = kInf;
  for (int v = 0; v < m; ++v) {
    const Cost c = dp[at(full, v)] + inst(v + 1, 0);
    if (c < best) {
      best = c;
      last = v;
    }
  }
  std::vector<Vertex> order;
  std::size_t set = full;
  while (last >= 0) {
    order.push_back(last + 1);
    const int prev = parent[at(set, last)];
    set &= ~(std::size_t{1} << last);
    last = prev;
  }
  order.push_back(0);
  std::reverse(order.begin(), order.end());
  return make_tour(inst, std::move(order));
}

Tour two_opt(const Instance& inst, Tour tour) {
  auto& t = tour.order;
  const int n = static_cast<int>(t.size());
  if (n < 4) return make_tour(inst, std::move(t));
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 0; i < n - 1; ++i) {
      const Vertex a = t[i];
      const Vertex b = t[i + 1];
      for (int j = i + 2; j < n; ++j) {
        const Vertex c = t[j];
        const Vertex d = t[(j + 1) % n];
        if (d == a) continue;
        const Cost delta = inst(a, c) + inst(b, d) - inst(a, b) - inst(c, d);
        if (delta < -1e-10) {
          std::reverse(t.begin() + i + 1, t.begin() + j + 1);
          improved = true;
          break;
        }
      }
    }
  }
  return make_tour(inst, std::move(t));
}

ReferenceTour reference_tour(const Instance& inst, int starts) {
  const int n = inst.size();
  if (n <= kHeldKarpMaxN) return {held_karp(inst), true};
  if (starts < 1) throw ContractError("reference tour needs at least one start");
  const int count = std::min(starts, n);
  ReferenceTour best;
  best.tour.length = std::numeric_limits<Cost>::infinity();
  for (int s = 0; s < count; ++s) {
    const Vertex start = static_cast<Vertex>(static_cast<long long>(s) * n / count);
    Tour t = two_opt(inst, nearest_neighbor(inst, start));
    if (t.length < best.tour.length) best.tour = std::move(t);
  }
  return best;
}

}  // namespace mlc
