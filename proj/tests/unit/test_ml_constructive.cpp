#include <doctest.h>

#include <functional>
#include <numeric>

#include "mlc/constructors.hpp"
#include "mlc/error.hpp"
#include "mlc/exact.hpp"
#include "mlc/generate.hpp"
#include "mlc/ml_constructive.hpp"
#include "oracles.hpp"

using namespace mlc;

namespace {

Instance sample(int n, std::uint64_t seed) {
  Rng rng(seed);
  return random_uniform_instance(n, rng, "s");
}

// Accepts according to an explicit function of the L_P entry.
class ScriptPolicy final : public DecisionTaker {
 public:
  explicit ScriptPolicy(std::function<bool(const EdgeQuery&)> f) : f_(std::move(f)) {}
  std::string name() const override { return "script"; }
  bool decide(const EdgeQuery& q) override {
    ++calls;
    return f_(q);
  }
  int calls = 0;

 private:
  std::function<bool(const EdgeQuery&)> f_;
};

}  // namespace

TEST_CASE("reject-all reproduces Clarke-Wright") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = sample(20 + static_cast<int>(seed) * 5, seed);
    RejectPolicy reject;
    const auto r = ml_constructive(inst, reject);
    CHECK(r.tour.order == clarke_wright(inst).order);
    CHECK(r.trace.phase_one_accepted == 0);
  }
}

TEST_CASE("policy definitions") {
  const auto inst = sample(60, 3);
  const auto cls = build_candidate_lists(inst);
  const auto lp = build_promising_list(cls, 2);
  PartialSolution ps(inst.size());
  FirstPolicy f;
  SecondPolicy s;
  for (std::size_t t = 0; t < lp.size(); ++t) {
    const EdgeQuery q{inst, cls, lp, t, lp[t], ps};
    CHECK(f.decide(q) == (lp[t].position == 1));
    CHECK(s.decide(q) == (lp[t].position == 2));
  }
}

TEST_CASE("trace bookkeeping") {
  const auto inst = sample(80, 4);
  AlwaysPolicy y;
  const auto r = ml_constructive(inst, y);
  const auto lp = build_promising_list(build_candidate_lists(inst), 2);
  REQUIRE(r.trace.records.size() == lp.size());
  int accepted = 0;
  std::size_t queried = 0;
  for (std::size_t t = 0; t < lp.size(); ++t) {
    const auto& rec = r.trace.records[t];
    CHECK(rec.edge == lp[t].edge());
    CHECK(rec.epoch == accepted);
    if (rec.verdict == Verdict::kOk) {
      ++queried;
      CHECK(rec.decision == Decision::kAccepted);
    } else {
      CHECK(rec.decision == Decision::kNotQueried);
    }
    accepted += rec.decision == Decision::kAccepted;
  }
  CHECK(accepted == r.trace.phase_one_accepted);
  CHECK(queried == r.trace.queries);
  CHECK(r.trace.phase_one_accepted + static_cast<int>(r.trace.phase_two_edges.size()) == inst.size());
  CHECK(is_permutation(r.tour.order, inst.size()));
}

TEST_CASE("only feasible edges reach the decision-taker") {
  const auto inst = sample(50, 5);
  ScriptPolicy p([](const EdgeQuery& q) {
    CHECK(q.solution.check(q.entry.i, q.entry.j) == Verdict::kOk);
    return q.index % 3 != 0;
  });
  const auto r = ml_constructive(inst, p);
  CHECK(static_cast<std::size_t>(p.calls) == r.trace.queries);
}

TEST_CASE("empirical policy: reproducible per seed, degenerates to Y") {
  const auto inst = sample(120, 6);
  EmpiricalPolicy e1(7), e2(7);
  const auto a = ml_constructive(inst, e1);
  const auto b = ml_constructive(inst, e2);
  const auto again = ml_constructive(inst, e1);  // begin() reseeds
  CHECK(a.tour.order == b.tour.order);
  CHECK(again.tour.order == a.tour.order);
  EmpiricalPolicy ones(99, 1.0, 1.0);
  AlwaysPolicy y;
  CHECK(ml_constructive(inst, ones).tour.order == ml_constructive(inst, y).tour.order);
  EmpiricalPolicy zeros(99, 0.0, 0.0);
  CHECK(ml_constructive(inst, zeros).tour.order == clarke_wright(inst).order);
  CHECK_THROWS_AS(EmpiricalPolicy(1, 1.5, 0.5), ContractError);
}

TEST_CASE("oracle policy accepts exactly the optimal edges") {
  const auto inst = sample(12, 8);
  const auto opt = held_karp(inst);
  OraclePolicy sc(opt.order);
  const auto r = ml_constructive(inst, sc);
  const auto edges = tour_edges(opt.order);
  for (const auto& rec : r.trace.records) {
    if (rec.decision == Decision::kNotQueried) continue;
    const bool in_opt = std::find(edges.begin(), edges.end(), rec.edge) != edges.end();
    CHECK((rec.decision == Decision::kAccepted) == in_opt);
  }
  CHECK(r.tour.length >= opt.length - 1e-9);
}

TEST_CASE("deterministic policies are bit-identical across runs and trackers") {
  const auto inst = sample(150, 9);
  FirstPolicy f;
  SecondPolicy s;
  AlwaysPolicy y;
  for (DecisionTaker* p : std::initializer_list<DecisionTaker*>{&f, &s, &y}) {
    const auto a = ml_constructive(inst, *p);
    ConstructionOptions scan;
    scan.tracker = TrackerMode::kFragmentScan;
    const auto b = ml_constructive(inst, *p, scan);
    CHECK(a.tour.order == b.tour.order);
    CHECK(a.tour.length == b.tour.length);
  }
}

TEST_CASE("k and m contract") {
  const auto inst = sample(30, 10);
  AlwaysPolicy y;
  CHECK_THROWS_AS(ml_constructive(inst, y, {1, 2, TrackerMode::kEndpointMap}), ContractError);
  CHECK_THROWS_AS(ml_constructive(inst, y, {5, 0, TrackerMode::kEndpointMap}), ContractError);
  CHECK(is_permutation(ml_constructive(inst, y, {5, 5, TrackerMode::kEndpointMap}).tour.order, 30));
}

TEST_CASE("phase one may close tiny instances") {
  const auto tri = Instance::from_points("tri", {{0, 0}, {0, 3}, {4, 0}}, EdgeWeightType::kEuc2D);
  AlwaysPolicy y;
  const auto r = ml_constructive(tri, y);
  CHECK(r.trace.phase_one_accepted == 3);
  CHECK(r.trace.phase_two_edges.empty());
  CHECK(r.tour.length == 12);
}

TEST_CASE("insertion trend basics") {
  const auto inst = sample(30, 11);
  const auto trend = insertion_probability_trend(inst, 200, 3);
  CHECK(trend.first_slot_acceptance == 1.0);
  CHECK(trend.post_completion_acceptance == 0.0);
  REQUIRE(trend.decile_acceptance.size() == 10);
  CHECK(trend.decile_acceptance.front() > trend.decile_acceptance.back());
  CHECK_THROWS_AS(insertion_probability_trend(inst, 99, 3), ContractError);
  CHECK_THROWS_AS(insertion_probability_trend(sample(4, 1), 200, 3), ContractError);
}

TEST_CASE("insertion trend matches exhaustive enumeration at n=5") {
  // Ten edges, one per decile: enumerate every order with union-find rules.
  const int n = 5;
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) edges.emplace_back(a, b);
  std::vector<int> perm(edges.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<double> exact(edges.size(), 0.0);
  double orders = 0;
  do {
    std::vector<int> deg(n, 0);
    oracle::UnionFind uf(n);
    int acc = 0;
    for (std::size_t p = 0; p < perm.size(); ++p) {
      const auto [a, b] = edges[perm[p]];
      if (acc == n || deg[a] >= 2 || deg[b] >= 2) continue;
      if (uf.find(a) == uf.find(b) && acc != n - 1) continue;
      uf.unite(a, b);
      ++deg[a], ++deg[b], ++acc;
      exact[p] += 1;
    }
    orders += 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  const auto trend = insertion_probability_trend(sample(n, 2), 20000, 5);
  for (std::size_t d = 0; d < 10; ++d) {
    CHECK(std::abs(trend.decile_expected[d] - exact[d] / orders) < 0.01);
    CHECK(std::abs(trend.decile_acceptance[d] - exact[d] / orders) < 0.02);
  }
}
