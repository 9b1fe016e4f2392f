// mlc: command-line front end.
//
// Exit codes: 0 ok, 1 other failure, 2 bad input (parse errors, invalid
// arguments), 3 missing weights or optimal tour, 4 internal error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mlc/benchmark.hpp"
#include "mlc/candidates.hpp"
#include "mlc/error.hpp"
#include "mlc/exact.hpp"
#include "mlc/fixtures.hpp"
#include "mlc/generate.hpp"
#include "mlc/manifest.hpp"
#include "mlc/render.hpp"
#include "mlc/resnet.hpp"
#include "mlc/statistics.hpp"
#include "mlc/tsplib.hpp"
#include "mlc/weights.hpp"

namespace fs = std::filesystem;
using namespace mlc;

namespace {

enum Exit { kOk = 0, kFailure = 1, kBadInput = 2, kMissingInput = 3, kInternal = 4 };

struct Common {
  int k = kDefaultCandidates;
  int m = kDefaultPromising;
  double threshold = kDefaultThreshold;
  std::uint64_t seed = 1;
  int runs = kEmpiricalRuns;
  std::string weights;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--k", c.k, "candidate list length")->capture_default_str();
  cmd->add_option("--m", c.m, "edges per candidate list entering L_P")->capture_default_str();
  cmd->add_option("--threshold", c.threshold, "ml-c confidence threshold")->capture_default_str();
  cmd->add_option("--seed", c.seed, "first seed of the empirical policies")->capture_default_str();
  cmd->add_option("--runs", c.runs, "empirical runs for ae / be")->capture_default_str();
  cmd->add_option("--weights", c.weights, "MLCW weight file for ml-c")->envname("MLC_WEIGHTS");
}

SolveContext make_context(const Common& c, bool need_weights) {
  SolveContext ctx;
  ctx.k = c.k;
  ctx.m = c.m;
  ctx.threshold = c.threshold;
  ctx.seed = c.seed;
  ctx.runs = c.runs;
  if (need_weights) {
    if (c.weights.empty()) throw MissingInputError("policy ml-c needs --weights or MLC_WEIGHTS");
    if (!fs::is_regular_file(c.weights)) throw MissingInputError("weight file not found: " + c.weights);
    ctx.weights = std::make_shared<const WeightBundle>(load_weights_file(c.weights));
  }
  return ctx;
}

std::optional<double> optimum_from_manifest(const std::string& manifest, const std::string& name) {
  if (manifest.empty() || !fs::is_regular_file(manifest)) return std::nullopt;
  for (const auto& e : read_manifest(manifest))
    if (e.name == name) return e.optimum;
  return std::nullopt;
}

std::pair<Vertex, Vertex> parse_edge(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ContractError("--edge expects i,j");
  try {
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ContractError("--edge expects two integers, got '" + text + "'");
  }
}

std::ostream& open_or_stdout(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw Error("cannot write " + path);
  return file;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  Common common;
  std::string instance;
  std::string policy = "cw";
  std::string opt_tour;
  std::string out;
  std::string manifest;
  std::optional<double> optimum;
};

int cmd_solve(const SolveArgs& a) {
  const PolicyKind kind = parse_policy(a.policy);
  const Instance inst = parse_tsplib_file(a.instance);
  SolveContext ctx = make_context(a.common, kind == PolicyKind::kMLC);
  if (kind == PolicyKind::kMLSC) {
    if (a.opt_tour.empty()) throw MissingInputError("policy ml-sc needs --opt-tour");
    if (!fs::is_regular_file(a.opt_tour)) throw MissingInputError("optimal tour not found: " + a.opt_tour);
    ctx.optimal = parse_tour_file(a.opt_tour);
  }
  const PolicyRun run = solve(inst, kind, ctx);

  const std::string out =
      a.out.empty() ? fs::path(a.instance).stem().string() + "." + a.policy + ".tour" : a.out;
  write_tour_file(out, inst.name(), run.tour);

  std::optional<double> opt = a.optimum;
  if (!opt) opt = optimum_from_manifest(a.manifest, inst.name());
  std::cout << "instance " << inst.name() << "\npolicy " << a.policy << "\nlength "
            << std::setprecision(12) << run.tour.length << '\n';
  if (opt) {
    std::cout << "optimum " << *opt << '\n' << std::fixed << std::setprecision(3)
              << "gap " << percentage_error(run.tour.length, *opt) << '\n';
    if (kind == PolicyKind::kAE) {
      double sum = 0;
      for (Cost len : run.lengths) sum += percentage_error(len, *opt);
      std::cout << "mean_gap " << sum / static_cast<double>(run.lengths.size()) << '\n';
    }
  }
  std::cout << std::fixed << std::setprecision(3) << "seconds " << run.seconds << "\ntour " << out
            << '\n';
  return kOk;
}

// ------------------------------------------------------------ benchmark

struct BenchmarkArgs {
  Common common;
  std::string manifest;
  std::string policies = "mf,cw,f,s,y,ae,be";
  std::string csv;
  std::string json;
  int jobs = 1;
};

int cmd_benchmark(const BenchmarkArgs& a) {
  if (a.manifest.empty()) throw MissingInputError("benchmark needs --manifest or MLC_MANIFEST");
  BenchmarkConfig cfg;
  cfg.policies = parse_policy_list(a.policies);
  bool need_weights = false;
  for (PolicyKind p : cfg.policies) need_weights |= p == PolicyKind::kMLC;
  cfg.context = make_context(a.common, need_weights);
  cfg.jobs = a.jobs;
  const auto result = run_benchmark(read_manifest(a.manifest), cfg);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';

  std::ofstream csv_file;
  write_gap_csv(open_or_stdout(a.csv, csv_file), result);
  if (!a.json.empty()) {
    std::ofstream js;
    write_summary_json(open_or_stdout(a.json, js), result);
  }
  std::cerr << std::fixed << std::setprecision(3);
  for (const auto& s : result.summary) {
    std::cerr << s.policy << ": mean " << s.mean << " std " << s.stddev << " best " << s.best_count
              << " over " << s.instances << " instances, " << s.seconds << " s\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- stats

struct StatsArgs {
  Common common;
  std::string manifest;
  std::string methods = "mf,cw";
  std::string dataset;
  std::string csv;
};

int cmd_stats(const StatsArgs& a) {
  std::ofstream file;
  std::ostream& out = open_or_stdout(a.csv, file);
  if (!a.dataset.empty()) {
    PositionPdfBuilder pdf;
    int used = 0;
    for (const auto& e : read_manifest(fs::path(a.dataset) / "manifest.jsonl")) {
      if (!e.opt_tour) continue;
      pdf.add(parse_tsplib_file(e.tsp), parse_tour_file(*e.opt_tour));
      ++used;
    }
    if (used == 0) throw MissingInputError("dataset holds no instance with a tour");
    const auto r = pdf.result();
    out << "position,rate,pdf\n";
    for (std::size_t p = 0; p < r.pdf.size(); ++p) out << p + 1 << ',' << r.rate[p] << ',' << r.pdf[p] << '\n';
    std::cerr << "instances " << used << ", coverage(1..5) " << r.coverage(5) << '\n';
    return kOk;
  }
  if (a.manifest.empty()) throw MissingInputError("stats needs --manifest (or --dataset)");
  const auto methods = parse_policy_list(a.methods);
  bool need_weights = false;
  for (PolicyKind p : methods) need_weights |= p == PolicyKind::kMLC;
  SolveContext ctx = make_context(a.common, need_weights);
  std::vector<std::pair<std::string, PositionStats>> rows;
  for (PolicyKind p : methods) rows.emplace_back(to_string(p), PositionStats{});
  int used = 0;
  for (const auto& e : read_manifest(a.manifest)) {
    if (!e.present() || !e.opt_tour || !fs::is_regular_file(*e.opt_tour)) continue;
    const Instance inst = parse_tsplib_file(e.tsp);
    const auto opt = parse_tour_file(*e.opt_tour);
    const auto cls = build_candidate_lists(inst, inst.size() - 1);
    ctx.optimal = opt;
    for (std::size_t r = 0; r < methods.size(); ++r) {
      const auto run = solve(inst, methods[r], ctx);
      rows[r].second += position_metrics(cls, run.tour.order, opt);
    }
    ++used;
  }
  if (used == 0) throw MissingInputError("no manifest instance has both a file and an optimal tour");
  write_position_csv(out, rows);
  std::cerr << "instances " << used << '\n';
  return kOk;
}

// ------------------------------------------------------------------ gen

struct GenArgs {
  int count = 10;
  int n = 0;
  int n_min = 0;
  int n_max = 0;
  std::uint64_t seed = 1;
  bool exact = false;
  bool reference = false;
  std::string out = "dataset";
};

int cmd_gen(const GenArgs& a) {
  const int lo = a.n ? a.n : a.n_min;
  const int hi = a.n ? a.n : a.n_max;
  if (lo == 0 || hi == 0) throw ContractError("gen needs --n or both --n-min and --n-max");
  if (a.exact && hi > kHeldKarpMaxN) {
    throw ContractError("--exact is limited to n <= " + std::to_string(kHeldKarpMaxN));
  }
  fs::create_directories(a.out);
  const auto instances = generate_instances(a.count, lo, hi, a.seed);
  std::ofstream manifest(fs::path(a.out) / "manifest.jsonl");
  for (const auto& inst : instances) {
    const std::string tsp = inst.name() + ".tsp";
    {
      std::ofstream f(fs::path(a.out) / tsp);
      write_tsplib(f, inst);
    }
    nlohmann::json line{{"name", inst.name()}, {"tsp", tsp}, {"n", inst.size()}};
    if (a.exact || a.reference) {
      const auto ref = a.exact ? ReferenceTour{held_karp(inst), true} : reference_tour(inst);
      const std::string tour = inst.name() + (ref.exact ? ".opt.tour" : ".ref.tour");
      write_tour_file(fs::path(a.out) / tour, inst.name(), ref.tour);
      line["opt_tour"] = tour;
      line["optimum"] = ref.tour.length;
      line["exact"] = ref.exact;
    }
    manifest << line.dump() << '\n';
  }
  std::cout << "wrote " << instances.size() << " instances to " << a.out << '\n';
  return kOk;
}

// --------------------------------------------------------------- render

struct RenderArgs {
  std::string instance;
  std::string edge;
  std::string ppm;
  std::string blob;
  std::string opt_tour;
  int k = kDefaultCandidates;
  int m = kDefaultPromising;
};

int cmd_render(const RenderArgs& a) {
  const Instance inst = parse_tsplib_file(a.instance);
  const auto [i, j] = parse_edge(a.edge);
  const auto cls = build_candidate_lists(inst, a.k);
  std::vector<Edge> blue;
  if (!a.opt_tour.empty()) {
    if (!fs::is_regular_file(a.opt_tour)) throw MissingInputError("optimal tour not found: " + a.opt_tour);
    const auto lp = build_promising_list(cls, std::min(a.m, cls.k()));
    std::size_t index = lp.size();
    for (std::size_t t = 0; t < lp.size(); ++t)
      if (lp[t].edge() == Edge(i, j)) index = t;
    blue = offline_edges(lp, index, parse_tour_file(a.opt_tour));
  }
  const auto img = render_context(inst, cls, blue, i, j);
  const std::string blob = a.blob.empty() && a.ppm.empty() ? "edge.blob" : a.blob;
  if (!blob.empty()) write_blob_file(blob, img);
  if (!a.ppm.empty()) write_ppm_file(a.ppm, img);
  std::cout << "red " << img.lit(kRed) << " green " << img.lit(kGreen) << " blue " << img.lit(kBlue)
            << '\n';
  return kOk;
}

// -------------------------------------------------------------- weights

struct WeightsArgs {
  std::string out;
  std::uint64_t seed = 1;
  int stem = Architecture{}.stem;
  bool zero = false;
};

int cmd_weights(const WeightsArgs& a) {
  Architecture arch;
  arch.stem = a.stem;
  const auto bundle = a.zero ? zero_bundle(arch) : random_bundle(arch, a.seed);
  save_weights_file(a.out, bundle);
  std::cout << "wrote " << bundle.parameter_count() << " parameters to " << a.out << '\n';
  return kOk;
}

// ------------------------------------------------------------- fixtures

struct FixtureArgs {
  std::string out = "fixtures";
  std::uint64_t seed = 2024;
  std::string weights;
};

int cmd_fixtures(const FixtureArgs& a) {
  const auto set = fixture_set(a.seed);
  write_fixture_set(a.out, set);
  std::cout << "wrote " << set.size() << " fixtures to " << a.out << '\n';
  if (!a.weights.empty()) {
    // Reference logits for the trainer-side parity check.
    const auto wb = load_weights_file(a.weights);
    std::ofstream out(fs::path(a.out) / "logits.csv");
    out << "index,logit_not_optimal,logit_optimal,p_optimal\n" << std::setprecision(17);
    for (std::size_t t = 0; t < set.size(); ++t) {
      const auto p = forward(wb, set[t].image);
      out << t << ',' << p.logit_not_optimal << ',' << p.logit_optimal << ',' << p.p_optimal << '\n';
    }
  }
  return kOk;
}

int run(CLI::App& app, int argc, char** argv) {
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TSP ML-Constructive toolkit"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  SolveArgs solve_args;
  auto* s = app.add_subcommand("solve", "build one tour and report its gap");
  s->add_option("--instance", solve_args.instance, "TSPLIB .tsp file")->required();
  s->add_option("--policy", solve_args.policy, "mf|cw|nn|f|s|y|ae|be|ml-c|ml-sc");
  s->add_option("--opt-tour", solve_args.opt_tour, "optimal tour for ml-sc");
  s->add_option("--out", solve_args.out, "tour file to write");
  s->add_option("--optimum", solve_args.optimum, "known optimum for the gap line");
  s->add_option("--manifest", solve_args.manifest, "manifest to look the optimum up")->envname("MLC_MANIFEST");
  add_common(s, solve_args.common);

  BenchmarkArgs bench_args;
  auto* b = app.add_subcommand("benchmark", "gap matrix over a manifest");
  b->add_option("--manifest", bench_args.manifest)->envname("MLC_MANIFEST");
  b->add_option("--policies", bench_args.policies, "comma separated");
  b->add_option("--csv", bench_args.csv, "gap matrix output (stdout if absent)");
  b->add_option("--json", bench_args.json, "summary output");
  b->add_option("--jobs", bench_args.jobs, "instances solved in parallel")->check(CLI::PositiveNumber);
  add_common(b, bench_args.common);

  StatsArgs stats_args;
  auto* st = app.add_subcommand("stats", "per-position TPR/FPR/PLR or optimal-position rates");
  st->add_option("--manifest", stats_args.manifest)->envname("MLC_MANIFEST");
  st->add_option("--methods", stats_args.methods, "comma separated policies");
  st->add_option("--dataset", stats_args.dataset, "directory written by gen; reports position rates");
  st->add_option("--csv", stats_args.csv, "output (stdout if absent)");
  add_common(st, stats_args.common);

  GenArgs gen_args;
  auto* g = app.add_subcommand("gen", "random unit-square instances");
  g->add_option("--count", gen_args.count)->check(CLI::NonNegativeNumber);
  g->add_option("--n", gen_args.n, "fixed vertex count");
  g->add_option("--n-min", gen_args.n_min);
  g->add_option("--n-max", gen_args.n_max);
  g->add_option("--seed", gen_args.seed);
  g->add_flag("--exact", gen_args.exact, "add Held-Karp optimal tours (n <= 18)");
  g->add_flag("--reference", gen_args.reference, "add 2-opt reference tours");
  g->add_option("--out", gen_args.out, "output directory");

  RenderArgs render_args;
  auto* r = app.add_subcommand("render", "context image of one edge");
  r->add_option("--instance", render_args.instance)->required();
  r->add_option("--edge", render_args.edge, "0-based i,j")->required();
  r->add_option("--ppm", render_args.ppm, "binary PPM output");
  r->add_option("--blob", render_args.blob, "raw float32 CHW output");
  r->add_option("--opt-tour", render_args.opt_tour, "draw earlier optimal L_P edges in blue");
  r->add_option("--k", render_args.k);
  r->add_option("--m", render_args.m);

  WeightsArgs weights_args;
  auto* w = app.add_subcommand("weights-init", "write a randomly initialised weight file");
  w->add_option("--out", weights_args.out)->required();
  w->add_option("--seed", weights_args.seed);
  w->add_option("--stem", weights_args.stem, "stem width");
  w->add_flag("--zero", weights_args.zero, "all parameters zero");

  FixtureArgs fixture_args;
  auto* fx = app.add_subcommand("fixtures", "write the shared 32-image fixture set");
  fx->add_option("--out", fixture_args.out, "output directory");
  fx->add_option("--seed", fixture_args.seed);
  fx->add_option("--weights", fixture_args.weights, "also write logits.csv for this weight file");

  if (const int rc = run(app, argc, argv); rc != kOk || app.get_subcommands().empty()) return rc;

  try {
    if (s->parsed()) return cmd_solve(solve_args);
    if (b->parsed()) return cmd_benchmark(bench_args);
    if (st->parsed()) return cmd_stats(stats_args);
    if (g->parsed()) return cmd_gen(gen_args);
    if (r->parsed()) return cmd_render(render_args);
    if (w->parsed()) return cmd_weights(weights_args);
    if (fx->parsed()) return cmd_fixtures(fixture_args);
  } catch (const MissingInputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMissingInput;
  } catch (const WeightError& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return e.kind() == WeightErrorKind::kIo ? kMissingInput : kBadInput;
  } catch (const ParseError& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return kBadInput;
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}
