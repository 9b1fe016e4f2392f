#include "mlc/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "mlc/constructors.hpp"
#include "mlc/error.hpp"
#include "mlc/resnet.hpp"
#include "mlc/tsplib.hpp"

namespace mlc {
namespace {

struct PolicyName {
  PolicyKind kind;
  const char* name;
};

constexpr PolicyName kPolicyNames[] = {
    {PolicyKind::kNN, "nn"}, {PolicyKind::kMF, "mf"},     {PolicyKind::kCW, "cw"},
    {PolicyKind::kF, "f"},   {PolicyKind::kS, "s"},       {PolicyKind::kY, "y"},
    {PolicyKind::kAE, "ae"}, {PolicyKind::kBE, "be"},     {PolicyKind::kMLC, "ml-c"},
    {PolicyKind::kMLSC, "ml-sc"},
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

PolicyRun two_phase(const Instance& inst, DecisionTaker& policy, const SolveContext& ctx) {
  ConstructionOptions opts;
  opts.k = ctx.k;
  opts.m = ctx.m;
  auto res = ml_constructive(inst, policy, opts);
  PolicyRun run;
  run.lengths = {res.tour.length};
  run.tour = std::move(res.tour);
  run.trace = std::move(res.trace);
  return run;
}

PolicyRun empirical(const Instance& inst, bool keep_best, const SolveContext& ctx) {
  if (ctx.runs < 1) throw ContractError("empirical policies need at least one run");
  ConstructionOptions opts;
  opts.k = ctx.k;
  opts.m = ctx.m;
  if (opts.m < 1 || opts.k < opts.m) throw ContractError("need k >= m >= 1");
  const auto cls = build_candidate_lists(inst, opts.k);
  const auto lp = build_promising_list(cls, std::min(opts.m, cls.k()));
  PolicyRun run;
  for (int r = 0; r < ctx.runs; ++r) {
    EmpiricalPolicy policy(ctx.seed + static_cast<std::uint64_t>(r));
    auto res = ml_constructive(inst, cls, lp, policy);
    run.lengths.push_back(res.tour.length);
    const bool take = r == 0 || (keep_best && res.tour.length < run.tour.length);
    if (take) {
      run.tour = std::move(res.tour);
      run.trace = std::move(res.trace);
    }
  }
  return run;
}

double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

}  // namespace

PolicyKind parse_policy(std::string_view name) {
  for (const auto& p : kPolicyNames)
    if (name == p.name) return p.kind;
  throw ContractError("unknown policy '" + std::string(name) +
                      "' (expected mf, cw, nn, f, s, y, ae, be, ml-c or ml-sc)");
}

const char* to_string(PolicyKind kind) noexcept {
  for (const auto& p : kPolicyNames)
    if (p.kind == kind) return p.name;
  return "?";
}

std::vector<PolicyKind> parse_policy_list(std::string_view text) {
  std::vector<PolicyKind> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    if (!piece.empty()) out.push_back(parse_policy(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw ContractError("empty policy list");
  return out;
}

PolicyRun solve(const Instance& inst, PolicyKind kind, const SolveContext& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  PolicyRun run;
  switch (kind) {
    case PolicyKind::kNN: run.tour = nearest_neighbor(inst, 0); break;
    case PolicyKind::kMF: run.tour = multi_fragment(inst); break;
    case PolicyKind::kCW: run.tour = clarke_wright(inst); break;
    case PolicyKind::kF: {
      FirstPolicy p;
      run = two_phase(inst, p, ctx);
      break;
    }
    case PolicyKind::kS: {
      SecondPolicy p;
      run = two_phase(inst, p, ctx);
      break;
    }
    case PolicyKind::kY: {
      AlwaysPolicy p;
      run = two_phase(inst, p, ctx);
      break;
    }
    case PolicyKind::kAE: run = empirical(inst, false, ctx); break;
    case PolicyKind::kBE: run = empirical(inst, true, ctx); break;
    case PolicyKind::kMLC: {
      if (!ctx.weights) throw MissingInputError("policy ml-c needs a weight file");
      ModelPolicy p(ctx.weights, ctx.threshold);
      run = two_phase(inst, p, ctx);
      break;
    }
    case PolicyKind::kMLSC: {
      if (!ctx.optimal) throw MissingInputError("policy ml-sc needs an optimal tour");
      if (!is_permutation(*ctx.optimal, inst.size())) {
        throw ContractError("optimal tour does not match the instance");
      }
      OraclePolicy p(*ctx.optimal);
      run = two_phase(inst, p, ctx);
      break;
    }
  }
  if (run.lengths.empty()) run.lengths = {run.tour.length};
  run.seconds = seconds_since(t0);
  return run;
}

std::vector<PolicySummary> summarize(const std::vector<PolicyKind>& policies,
                                     const std::vector<BenchmarkRow>& rows) {
  std::vector<PolicySummary> out;
  for (std::size_t c = 0; c < policies.size(); ++c) {
    PolicySummary s;
    s.policy = to_string(policies[c]);
    std::vector<double> gaps;
    for (const auto& row : rows) {
      const auto& cell = row.cells[c];
      s.seconds += cell.seconds;
      if (cell.gap) gaps.push_back(*cell.gap);
    }
    s.instances = static_cast<int>(gaps.size());
    s.mean = mean_of(gaps);
    double var = 0;
    for (double g : gaps) var += (g - s.mean) * (g - s.mean);
    s.stddev = gaps.empty() ? 0.0 : std::sqrt(var / static_cast<double>(gaps.size()));
    out.push_back(std::move(s));
  }
  for (const auto& row : rows) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& cell : row.cells)
      if (cell.gap) best = std::min(best, *cell.gap);
    for (std::size_t c = 0; c < row.cells.size(); ++c) {
      if (row.cells[c].gap && *row.cells[c].gap <= best + 1e-9) ++out[c].best_count;
    }
  }
  return out;
}

BenchmarkResult run_benchmark(const std::vector<ManifestEntry>& corpus, const BenchmarkConfig& cfg) {
  if (cfg.policies.empty()) throw ContractError("benchmark needs at least one policy");
  BenchmarkResult result;
  result.policies = cfg.policies;

  std::vector<const ManifestEntry*> todo;
  for (const auto& e : corpus) {
    if (!e.present()) {
      result.warnings.push_back(e.name + ": instance file not found, skipped");
    } else if (!e.optimum) {
      result.warnings.push_back(e.name + ": no reference optimum, skipped");
    } else {
      todo.push_back(&e);
    }
  }

  std::vector<BenchmarkRow> rows(todo.size());
  std::vector<std::vector<std::string>> notes(todo.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= todo.size()) return;
      try {
        const ManifestEntry& e = *todo[idx];
        const Instance inst = parse_tsplib_file(e.tsp);
        SolveContext ctx = cfg.context;
        if (e.opt_tour && std::filesystem::is_regular_file(*e.opt_tour)) {
          ctx.optimal = parse_tour_file(*e.opt_tour);
        } else {
          ctx.optimal.reset();
        }
        BenchmarkRow row;
        row.instance = e.name;
        row.n = inst.size();
        row.optimum = *e.optimum;
        std::optional<PolicyRun> shared_empirical;
        for (PolicyKind kind : cfg.policies) {
          BenchmarkCell cell;
          if (kind == PolicyKind::kMLSC && !ctx.optimal) {
            notes[idx].push_back(e.name + ": no optimal tour file, ml-sc left empty");
            row.cells.push_back(cell);
            continue;
          }
          PolicyRun run;
          const bool is_empirical = kind == PolicyKind::kAE || kind == PolicyKind::kBE;
          if (is_empirical && shared_empirical) {
            run = *shared_empirical;
            run.seconds = 0;
          } else {
            run = solve(inst, is_empirical ? PolicyKind::kAE : kind, ctx);
            if (is_empirical) shared_empirical = run;
          }
          std::vector<double> gaps;
          for (Cost len : run.lengths) gaps.push_back(percentage_error(len, *e.optimum));
          if (kind == PolicyKind::kBE) {
            const auto best = std::min_element(run.lengths.begin(), run.lengths.end());
            cell.gap = *std::min_element(gaps.begin(), gaps.end());
            cell.length = *best;
          } else if (kind == PolicyKind::kAE) {
            cell.gap = mean_of(gaps);
            cell.length = mean_of(run.lengths);
          } else {
            cell.gap = gaps.front();
            cell.length = run.tour.length;
          }
          cell.seconds = run.seconds;
          row.cells.push_back(cell);
        }
        rows[idx] = std::move(row);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failure) failure = std::current_exception();
        next = todo.size();
        return;
      }
    }
  };

  const int jobs = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(std::max<std::size_t>(todo.size(), 1))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (auto& n : notes)
    for (auto& w : n) result.warnings.push_back(std::move(w));
  result.rows = std::move(rows);
  result.summary = summarize(result.policies, result.rows);
  return result;
}

void write_gap_csv(std::ostream& out, const BenchmarkResult& result) {
  out << "instance,n,optimum";
  for (PolicyKind p : result.policies) out << ',' << to_string(p);
  out << '\n';
  const auto flags = out.flags();
  out << std::fixed << std::setprecision(4);
  for (const auto& row : result.rows) {
    out << row.instance << ',' << row.n << ',' << std::setprecision(0) << row.optimum
        << std::setprecision(4);
    for (const auto& cell : row.cells) {
      out << ',';
      if (cell.gap) out << *cell.gap;
    }
    out << '\n';
  }
  out.flags(flags);
}

void write_summary_json(std::ostream& out, const BenchmarkResult& result) {
  using nlohmann::json;
  json j;
  j["policies"] = json::array();
  for (const auto& s : result.summary) {
    j["policies"].push_back({{"policy", s.policy},
                             {"mean", s.mean},
                             {"std", s.stddev},
                             {"best_count", s.best_count},
                             {"instances", s.instances},
                             {"seconds", s.seconds}});
  }
  j["instances"] = json::array();
  for (const auto& row : result.rows) {
    json gaps = json::object();
    json secs = json::object();
    for (std::size_t c = 0; c < row.cells.size(); ++c) {
      const char* name = to_string(result.policies[c]);
      gaps[name] = row.cells[c].gap ? json(*row.cells[c].gap) : json(nullptr);
      secs[name] = row.cells[c].seconds;
    }
    j["instances"].push_back(
        {{"name", row.instance}, {"n", row.n}, {"optimum", row.optimum}, {"gaps", gaps}, {"seconds", secs}});
  }
  j["warnings"] = result.warnings;
  out << j.dump(2) << '\n';
}

}  // namespace mlc
