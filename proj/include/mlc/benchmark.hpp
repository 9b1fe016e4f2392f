#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mlc/candidates.hpp"
#include "mlc/instance.hpp"
#include "mlc/manifest.hpp"
#include "mlc/ml_constructive.hpp"
#include "mlc/weights.hpp"

namespace mlc {

enum class PolicyKind { kNN, kMF, kCW, kF, kS, kY, kAE, kBE, kMLC, kMLSC };

/// Accepts mf | cw | nn | f | s | y | ae | be | ml-c | ml-sc; throws
/// ContractError otherwise.
PolicyKind parse_policy(std::string_view name);
const char* to_string(PolicyKind kind) noexcept;
std::vector<PolicyKind> parse_policy_list(std::string_view comma_separated);

inline constexpr int kEmpiricalRuns = 20;

/// Inputs a policy may need beyond the instance.
struct SolveContext {
  int k = kDefaultCandidates;
  int m = kDefaultPromising;
  double threshold = 0.99;
  std::uint64_t seed = 1;        // first empirical seed
  int runs = kEmpiricalRuns;     // empirical runs for ae / be
  std::shared_ptr<const WeightBundle> weights;  // ml-c
  std::optional<std::vector<Vertex>> optimal;   // ml-sc
};

/// Thrown when a policy's extra input (weights, optimal tour) is absent.
class MissingInputError : public Error {
 public:
  using Error::Error;
};

struct PolicyRun {
  Tour tour;                   // ae: the run with ctx.seed; be: the shortest run
  std::vector<Cost> lengths;   // one per run; several only for ae / be
  std::optional<ConstructionTrace> trace;  // two-phase policies only
  double seconds = 0;
};

PolicyRun solve(const Instance& inst, PolicyKind kind, const SolveContext& ctx = {});

struct BenchmarkConfig {
  std::vector<PolicyKind> policies;
  SolveContext context;
  int jobs = 1;
};

struct BenchmarkCell {
  std::optional<double> gap;  // absent when the policy could not run
  Cost length = 0;
  double seconds = 0;
};

struct BenchmarkRow {
  std::string instance;
  int n = 0;
  double optimum = 0;
  std::vector<BenchmarkCell> cells;  // one per policy, config order
};

struct PolicySummary {
  std::string policy;
  double mean = 0;
  double stddev = 0;    // population
  int best_count = 0;   // rows where this policy ties the row minimum
  int instances = 0;    // rows with a gap
  double seconds = 0;
};

struct BenchmarkResult {
  std::vector<PolicyKind> policies;
  std::vector<BenchmarkRow> rows;
  std::vector<PolicySummary> summary;
  std::vector<std::string> warnings;
};

/// Runs every policy on every present manifest entry with an optimum.
/// Entries that are missing or lack an optimum are skipped with a warning;
/// ml-sc without an opt tour leaves its cell empty with a warning. Rows come
/// back in manifest order whatever the job count.
BenchmarkResult run_benchmark(const std::vector<ManifestEntry>& corpus, const BenchmarkConfig& cfg);

/// Recomputes mean, population std and best counts from the rows.
std::vector<PolicySummary> summarize(const std::vector<PolicyKind>& policies,
                                     const std::vector<BenchmarkRow>& rows);

void write_gap_csv(std::ostream& out, const BenchmarkResult& result);
void write_summary_json(std::ostream& out, const BenchmarkResult& result);

}  // namespace mlc
