#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "conga/approximator.h"
#include "conga/generators.h"
#include "conga/io.h"
#include "conga/parallel.h"
#include "conga/partitioner.h"
#include "conga/verifier.h"

namespace {

using namespace conga;

constexpr int kExitPass = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct RunConfig {
  uint64_t seed = 1;
  int threads = 0;
  Constants constants;
  int dense_cap = 0;
  int samples = 100;
  double tol = kRatioTolerance;
  std::vector<std::string> suites;
};

void setup_logging() {
  auto logger = spdlog::stderr_logger_st("conga");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("CONGA_LOG")) {
    auto level = spdlog::level::from_str(env);
    // from_str maps unknown names to off; only honour recognised ones.
    if (level != spdlog::level::off || std::string(env) == "off") spdlog::set_level(level);
  }
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  cmd->add_option("--threads", cfg.threads, "OpenMP threads, 0 = runtime default")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--c-t", cfg.constants.c_t, "Multiplier for T = ceil(c_t log^2)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--c-phi", cfg.constants.c_phi, "phi = min(1/24, 1/(c_phi log^3))")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--c-kappa", cfg.constants.c_kappa, "kappa = max(1, c_kappa log^3)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--dense-cap", cfg.dense_cap,
                  "Run dense flow-matrix diagnostics on calls with at most this many vertices")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--samples", cfg.samples, "Samples per suite")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--tol", cfg.tol, "Relative tolerance for the quality lower bound")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
}

BuildOptions build_options(const RunConfig& cfg) {
  BuildOptions o;
  o.constants = cfg.constants;
  o.seed = cfg.seed;
  o.threads = cfg.threads;
  o.dense_cap = cfg.dense_cap;
  return o;
}

std::string summary_line(const Graph& g, const Hierarchy& h, const LaminarApproximator& a,
                         int components) {
  std::ostringstream os;
  os << "n=" << g.n() << " m=" << g.m() << " W=" << format_double(g.W()) << " L=" << h.L()
     << " delta_P=";
  std::vector<double> seq = h.boundary_sequence(g);
  for (size_t i = 0; i < seq.size(); ++i) os << (i ? "," : "") << format_double(seq[i]);
  int resolved = 0;
  for (const LevelCertificate& c : h.certificates) resolved += c.level_flow_resolved;
  os << " K=" << a.K << " T=" << h.params.T << " phi=" << format_double(h.params.phi)
     << " alpha=" << format_double(a.alpha) << " beta=" << format_double(a.beta)
     << " quality_bound=" << format_double(a.quality_bound) << " components=" << components
     << " level_flows_resolved=" << resolved;
  return os.str();
}

int cmd_gen(const std::string& family, int n, const GenOptions& go, const std::string& out) {
  Graph g = generate(family, n, go);
  std::string text = format_graph(g);
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_file(out, text);
  }
  return kExitPass;
}

int cmd_build(const std::string& graph_path, const std::string& prefix, const RunConfig& cfg) {
  Graph g = parse_graph(read_file(graph_path));
  ScopedThreads threads(cfg.threads);
  spdlog::info("building hierarchy for n={} m={}", g.n(), g.m());
  Hierarchy h = build_hierarchy(g, build_options(cfg));
  LaminarApproximator a = assemble(g, h);
  write_file(prefix + ".hier", format_hierarchy(h.levels));
  write_file(prefix + ".capx", serialize(a));
  write_file(prefix + ".cert", format_certificate(certificate_of(h)));
  Partition comps = connected_components(g);
  std::cout << summary_line(g, h, a, comps.size()) << "\n";
  if (comps.size() > 1) {
    for (int i = 0; i < comps.size(); ++i)
      std::cout << "note component=" << i << " size=" << comps.cluster(i).size()
                << " first=" << comps.cluster(i)[0] << "\n";
  }
  return kExitPass;
}

int cmd_verify(const std::string& graph_path, const std::string& approx_path,
               std::string hier_path, const RunConfig& cfg) {
  Graph g = parse_graph(read_file(graph_path));
  LaminarApproximator a = deserialize(read_file(approx_path));
  if (a.n != g.n()) throw InputError("approximator and graph disagree on n");
  if (a.graph_checksum != graph_checksum(g))
    throw InputError("approximator was built for a different graph");
  if (hier_path.empty()) {
    hier_path = approx_path;
    auto dot = hier_path.rfind(".capx");
    if (dot != std::string::npos) hier_path.erase(dot);
    hier_path += ".hier";
  }
  std::vector<Partition> levels = parse_hierarchy(read_file(hier_path));
  if (levels.front().n() != g.n()) throw InputError("hierarchy and graph disagree on n");

  SuiteOptions so;
  so.samples = cfg.samples;
  so.alpha = a.alpha;
  so.beta = a.beta;
  so.seed = cfg.seed;
  so.tol = cfg.tol;
  if (!cfg.suites.empty()) {
    so.quality = so.property3 = so.mixing = so.fairness = so.laminarity = so.structure = false;
    for (const std::string& s : cfg.suites) {
      if (s == "quality") so.quality = true;
      else if (s == "property3") so.property3 = true;
      else if (s == "mixing-sampled" || s == "mixing") so.mixing = true;
      else if (s == "fairness-audit" || s == "fairness") so.fairness = true;
      else if (s == "laminarity") so.laminarity = true;
      else if (s == "structure") so.structure = true;
      else throw InputError("unknown suite '" + s + "'");
    }
  }
  ScopedThreads threads(cfg.threads);
  VerifyOutcome out = run_suites(g, levels, so, &a);
  if (so.quality) std::cout << out.quality.to_csv();
  for (const SuiteResult& s : out.suites) {
    std::cerr << (s.pass ? "PASS " : "FAIL ") << s.name;
    if (!s.detail.empty()) std::cerr << ": " << s.detail;
    std::cerr << "\n";
  }
  return out.pass() ? kExitPass : kExitVerifyFailed;
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      int n = std::stoi(item, &used);
      if (used != item.size() || n < 1) throw InputError("");
      sizes.push_back(n);
    } catch (const std::exception&) {
      throw InputError("bad size '" + item + "' in --sizes");
    }
  }
  if (sizes.empty()) throw InputError("--sizes is empty");
  return sizes;
}

int cmd_bench(const std::string& family, const std::string& sizes_text, int max_cap,
              double budget_ms, const RunConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  std::vector<int> sizes = parse_sizes(sizes_text);
  ScopedThreads threads(cfg.threads);
  std::cout << "n,m,L,K,build_ms,query_ms,max_ratio,status\n";
  double spent = 0.0;
  for (int n : sizes) {
    GenOptions go;
    go.seed = cfg.seed;
    go.max_cap = max_cap;
    Graph g = generate(family, n, go);
    if (budget_ms > 0.0 && spent > budget_ms) {
      std::cout << n << ',' << g.m() << ",,,,,,skipped\n";
      continue;
    }
    auto t0 = Clock::now();
    Hierarchy h = build_hierarchy(g, build_options(cfg));
    LaminarApproximator a = assemble(g, h);
    double build_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    std::vector<Demand> demands = sample_demands(g, a, cfg.samples, cfg.seed);
    auto t1 = Clock::now();
    std::vector<double> est = estimate_congestion_batch(a, demands, 1e-9);
    double query_ms = std::chrono::duration<double, std::milli>(Clock::now() - t1).count();
    QualityReport q = empirical_quality(g, a, demands, cfg.tol);
    spent += build_ms;
    std::cout << n << ',' << g.m() << ',' << h.L() << ',' << a.K << ',' << build_ms << ','
              << query_ms / std::max<size_t>(1, est.size()) << ',' << q.max_ratio << ','
              << (q.pass ? "ok" : "quality-fail") << "\n";
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Hierarchical congestion-approximator toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::string family, out, graph_path, prefix, approx_path, hier_path, sizes = "16,32,64";
  int n = 0, bench_cap = 1;
  double budget_ms = 0.0;
  GenOptions go;

  CLI::App* gen = app.add_subcommand("gen", "Generate a graph in the text format");
  gen->add_option("family", family, "gnm | grid | two-cliques | path | star | power-law")
      ->required()
      ->check(CLI::IsMember(generator_families()));
  gen->add_option("n", n, "Vertex count")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", go.seed, "Random seed")->capture_default_str();
  gen->add_option("--max-cap", go.max_cap, "Capacities drawn from [1, max-cap]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen->add_option("--bridge-cap", go.bridge_cap, "Bridge capacity for two-cliques")
      ->check(CLI::Range(1.0, 1e18))
      ->capture_default_str();
  gen->add_option("--extra-edges", go.extra_edges, "Extra random edges for gnm (default n)");
  gen->add_option("-o,--output", out, "Output file (default stdout)");

  CLI::App* build = app.add_subcommand("build", "Build hierarchy, approximator and certificates");
  build->add_option("graph", graph_path, "Graph file")->required();
  build->add_option("-o,--output", prefix, "Output prefix for .hier/.capx/.cert")->required();
  add_common(build, cfg);

  CLI::App* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("graph", graph_path, "Graph file")->required();
  verify->add_option("approx", approx_path, "Approximator file (.capx)")->required();
  verify->add_option("--hierarchy", hier_path, "Hierarchy file (default: <approx>.hier)");
  verify->add_option("--suite", cfg.suites,
                     "quality | property3 | mixing-sampled | fairness-audit | laminarity | "
                     "structure (repeatable; default all)")
      ->delimiter(',');
  add_common(verify, cfg);

  CLI::App* bench = app.add_subcommand("bench", "Benchmark a family over a size sweep");
  bench->add_option("--family", family, "Graph family")
      ->check(CLI::IsMember(generator_families()))
      ->required();
  bench->add_option("--sizes", sizes, "Comma-separated vertex counts")->capture_default_str();
  bench->add_option("--max-cap", bench_cap, "Capacities drawn from [1, max-cap]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--budget-ms", budget_ms, "Skip remaining rows once builds exceed this")
      ->capture_default_str();
  add_common(bench, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(family, n, go, out);
    if (*build) return cmd_build(graph_path, prefix, cfg);
    if (*verify) return cmd_verify(graph_path, approx_path, hier_path, cfg);
    if (*bench) return cmd_bench(family, sizes, bench_cap, budget_ms, cfg);
  } catch (const InputError& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  } catch (const InternalError& e) {
    spdlog::critical("internal invariant violated: {}", e.what());
    return kExitInternal;
  } catch (const std::exception& e) {
    spdlog::critical("{}", e.what());
    return kExitInternal;
  }
  return kExitUsage;
}
