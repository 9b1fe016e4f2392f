#include "mlc/ml_constructive.hpp"

#include <string>

#include "mlc/constructors.hpp"
#include "mlc/error.hpp"
#include "mlc/random.hpp"

namespace mlc {
namespace {

std::uint64_t edge_key(Vertex a, Vertex b) {
  const Edge e(a, b);
  return (static_cast<std::uint64_t>(e.u) << 32) | static_cast<std::uint32_t>(e.v);
}

}  // namespace

EmpiricalPolicy::EmpiricalPolicy(std::uint64_t seed, double p1, double p2)
    : seed_(seed), p1_(p1), p2_(p2), rng_(seed) {
  if (p1 < 0 || p1 > 1 || p2 < 0 || p2 > 1) {
    throw ContractError("empirical acceptance probabilities must lie in [0, 1]");
  }
}

bool EmpiricalPolicy::decide(const EdgeQuery& q) {
  const double p = q.entry.position == 1 ? p1_ : q.entry.position == 2 ? p2_ : 0.0;
  return uniform01(rng_) < p;
}

OraclePolicy::OraclePolicy(const std::vector<Vertex>& optimal_order) {
  for (const Edge& e : tour_edges(optimal_order)) edges_.insert(edge_key(e.u, e.v));
}

bool OraclePolicy::decide(const EdgeQuery& q) {
  return edges_.contains(edge_key(q.entry.i, q.entry.j));
}

ConstructionResult ml_constructive(const Instance& inst, const CandidateLists& cls,
                                   const PromisingList& lp, DecisionTaker& policy,
                                   TrackerMode tracker) {
  PartialSolution ps(inst.size(), tracker);
  ConstructionResult result;
  auto& trace = result.trace;
  trace.records.reserve(lp.size());
  policy.begin(inst);

  for (std::size_t idx = 0; idx < lp.size(); ++idx) {
    const PromisingEntry& entry = lp[idx];
    TraceRecord rec{entry.edge(), entry.position, Verdict::kOk, Decision::kNotQueried,
                    ps.epoch()};
    rec.verdict = ps.check(entry.i, entry.j);
    if (rec.verdict == Verdict::kOk) {
      ++trace.queries;
      const bool accept = policy.decide(EdgeQuery{inst, cls, lp, idx, entry, ps});
      rec.decision = accept ? Decision::kAccepted : Decision::kRejected;
      if (accept) ps.accept(entry.i, entry.j);
    }
    trace.records.push_back(rec);
  }
  trace.phase_one_accepted = ps.epoch();
  // Phase one closes the tour only when L_P holds a whole Hamiltonian cycle
  // (tiny instances); phase two is then a no-op.
  complete_with_savings(inst, ps);
  const auto& all = ps.edges();
  trace.phase_two_edges.assign(all.begin() + trace.phase_one_accepted, all.end());
  result.probes = ps.probes();
  result.tour = make_tour(inst, ps.tour_order());
  return result;
}

ConstructionResult ml_constructive(const Instance& inst, DecisionTaker& policy,
                                   const ConstructionOptions& options) {
  if (options.m < 1 || options.k < options.m) {
    throw ContractError("need k >= m >= 1 (k=" + std::to_string(options.k) +
                        ", m=" + std::to_string(options.m) + ")");
  }
  const auto cls = build_candidate_lists(inst, options.k);
  const auto lp = build_promising_list(cls, std::min(options.m, cls.k()));
  return ml_constructive(inst, cls, lp, policy, options.tracker);
}

InsertionTrend insertion_probability_trend(const Instance& inst, int trials, std::uint64_t seed) {
  if (trials < 100) throw ContractError("insertion trend needs at least 100 trials");
  const int n = inst.size();
  if (n < 5) throw ContractError("insertion trend needs n >= 5 (ten deciles of edges)");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  const std::size_t total = edges.size();

  std::vector<std::uint64_t> accepted(total, 0);
  std::vector<double> expected(total, 0.0);
  std::uint64_t post_slots = 0;
  std::uint64_t post_accepts = 0;
  Rng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    shuffle(std::span<Edge>(edges), rng);
    PartialSolution ps(n);
    std::int64_t zeros = n, ones = 0;
    for (std::size_t pos = 0; pos < total; ++pos) {
      // Edges already scanned are infeasible from here on, so the edge at
      // `pos`, uniform over the unscanned ones, is feasible with probability
      // feasible / unscanned.
      std::int64_t feasible = 0;
      if (!ps.complete()) {
        feasible = zeros * (zeros - 1) / 2 + zeros * ones + ones * (ones - 1) / 2 - ones / 2;
        if (zeros == 0 && ones == 2) feasible = 1;
      }
      expected[pos] += static_cast<double>(feasible) / static_cast<double>(total - pos);
      if (ps.complete()) {
        ++post_slots;
        // Every remaining edge meets two degree-2 vertices.
        post_accepts += ps.check(edges[pos].u, edges[pos].v) == Verdict::kOk;
        continue;
      }
      const Vertex u = edges[pos].u, v = edges[pos].v;
      if (ps.try_accept(u, v) != Verdict::kOk) continue;
      ++accepted[pos];
      for (Vertex w : {u, v}) {
        if (ps.degree(w) == 1) --zeros, ++ones;
        else --ones;
      }
    }
  }

  InsertionTrend out;
  out.edges = total;
  out.trials = trials;
  out.first_slot_acceptance = static_cast<double>(accepted[0]) / trials;
  out.post_completion_acceptance =
      post_slots ? static_cast<double>(post_accepts) / static_cast<double>(post_slots) : 0.0;
  for (int d = 0; d < 10; ++d) {
    const std::size_t lo = total * d / 10;
    const std::size_t hi = total * (d + 1) / 10;
    std::uint64_t sum = 0;
    double mass = 0;
    for (std::size_t p = lo; p < hi; ++p) sum += accepted[p], mass += expected[p];
    const double slots = static_cast<double>(hi - lo) * trials;
    out.decile_acceptance.push_back(static_cast<double>(sum) / slots);
    out.decile_expected.push_back(mass / slots);
  }
  return out;
}

}  // namespace mlc
