#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "mlc/candidates.hpp"
#include "mlc/fragments.hpp"
#include "mlc/instance.hpp"

namespace mlc {

/// Everything a decision-taker may look at when asked about one L_P entry.
/// Only feasible edges are ever queried.
struct EdgeQuery {
  const Instance& instance;
  const CandidateLists& candidates;
  const PromisingList& promising;
  std::size_t index;  // position of `entry` within `promising`
  const PromisingEntry& entry;
  const PartialSolution& solution;
};

/// Accept/reject policy consulted during the first phase.
class DecisionTaker {
 public:
  virtual ~DecisionTaker() = default;

  virtual std::string name() const = 0;

  /// Called once per construction before the first query.
  virtual void begin(const Instance&) {}

  virtual bool decide(const EdgeQuery& query) = 0;
};

/// Accepts iff the edge sits at position 1 (F).
class FirstPolicy final : public DecisionTaker {
 public:
  std::string name() const override { return "f"; }
  bool decide(const EdgeQuery& q) override { return q.entry.position == 1; }
};

/// Accepts iff the edge sits at position 2 (S).
class SecondPolicy final : public DecisionTaker {
 public:
  std::string name() const override { return "s"; }
  bool decide(const EdgeQuery& q) override { return q.entry.position == 2; }
};

/// Accepts every feasible edge (Y).
class AlwaysPolicy final : public DecisionTaker {
 public:
  std::string name() const override { return "y"; }
  bool decide(const EdgeQuery&) override { return true; }
};

/// Rejects everything; the construction degenerates to Clarke-Wright.
class RejectPolicy final : public DecisionTaker {
 public:
  std::string name() const override { return "reject"; }
  bool decide(const EdgeQuery&) override { return false; }
};

inline constexpr double kEmpiricalFirst = 0.886;
inline constexpr double kEmpiricalSecond = 0.512;

/// Bernoulli acceptance with probability p1 at position 1 and p2 at
/// position 2 (E). The generator is reseeded in begin(), so one policy
/// object gives the same tour for the same instance every time.
class EmpiricalPolicy final : public DecisionTaker {
 public:
  EmpiricalPolicy(std::uint64_t seed, double p1 = kEmpiricalFirst, double p2 = kEmpiricalSecond);

  std::string name() const override { return "e"; }
  void begin(const Instance&) override { rng_.seed(seed_); }
  bool decide(const EdgeQuery& q) override;

 private:
  std::uint64_t seed_;
  double p1_;
  double p2_;
  std::mt19937_64 rng_;
};

/// Answers from a known optimal tour (ML-SC).
class OraclePolicy final : public DecisionTaker {
 public:
  explicit OraclePolicy(const std::vector<Vertex>& optimal_order);

  std::string name() const override { return "ml-sc"; }
  bool decide(const EdgeQuery& q) override;

 private:
  std::unordered_set<std::uint64_t> edges_;
};

enum class Decision : std::uint8_t { kNotQueried, kAccepted, kRejected };

struct TraceRecord {
  Edge edge;
  int position = 0;
  Verdict verdict = Verdict::kOk;
  Decision decision = Decision::kNotQueried;
  int epoch = 0;  // accepted edges before this record
};

struct ConstructionTrace {
  std::vector<TraceRecord> records;  // one per L_P entry, in L_P order
  int phase_one_accepted = 0;
  std::size_t queries = 0;
  std::vector<Edge> phase_two_edges;
};

struct ConstructionOptions {
  int k = kDefaultCandidates;
  int m = kDefaultPromising;
  TrackerMode tracker = TrackerMode::kEndpointMap;
};

struct ConstructionResult {
  Tour tour;
  ConstructionTrace trace;
  std::uint64_t probes = 0;
};

/// Two-phase construction: L_P filtered by feasibility and `policy`, then
/// Clarke-Wright savings over the free vertices.
ConstructionResult ml_constructive(const Instance& inst, DecisionTaker& policy,
                                   const ConstructionOptions& options = {});

/// Same, with candidate and promising lists supplied by the caller.
ConstructionResult ml_constructive(const Instance& inst, const CandidateLists& cls,
                                   const PromisingList& lp, DecisionTaker& policy,
                                   TrackerMode tracker = TrackerMode::kEndpointMap);

struct InsertionTrend {
  std::vector<double> decile_acceptance;  // 10 entries, first to last
  /// Same curve from the per-slot conditional acceptance probability
  /// (feasible unscanned edges / unscanned edges), far less noisy in the tail.
  std::vector<double> decile_expected;
  double first_slot_acceptance = 0;       // list position 1
  double post_completion_acceptance = 0;  // slots scanned after the tour closed
  std::size_t edges = 0;
  int trials = 0;
};

/// Monte-Carlo estimate of the acceptance probability by position in a
/// uniformly shuffled list of all edges fed to an always-accept constructor.
InsertionTrend insertion_probability_trend(const Instance& inst, int trials, std::uint64_t seed);

}  // namespace mlc
