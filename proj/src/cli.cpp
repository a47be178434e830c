#include "ucf/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "ucf/decomposition.hpp"
#include "ucf/error.hpp"
#include "ucf/generators.hpp"
#include "ucf/graph.hpp"
#include "ucf/ucf_index.hpp"
#include "ucf/verify.hpp"

namespace ucf::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string input;
  std::string output;
  std::string index;
  std::string model = "gnm";
  std::string algo;
  std::vector<std::string> algos;
  std::string bounds = "both";
  int k = 0;
  double eta = 0.0;
  std::uint64_t seed = 1;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> band;
  std::vector<double> fractions;
  int repeat = 1;
};

BoundMode parse_bounds(const std::string& s) {
  if (s == "both") return BoundMode::kBoth;
  if (s == "topk-only") return BoundMode::kTopKOnly;
  if (s == "beta-only") return BoundMode::kBetaOnly;
  throw UsageError("unknown --bounds value '" + s + "'");
}

Algorithm require_algorithm(const std::string& s) {
  auto a = parse_algorithm(s);
  if (!a) throw UsageError("unknown algorithm '" + s + "' (expected bc, op, opstar or ec)");
  return *a;
}

LoadedGraph load_graph(const std::string& path, std::ostream& err) {
  LoadedGraph loaded = load_edge_list(path);
  if (loaded.dropped_zero_edges > 0) {
    err << "warning: dropped " << loaded.dropped_zero_edges << " edge(s) with p = 0\n";
  }
  return loaded;
}

// Integers compare numerically, everything else lexicographically.
bool label_less(const std::string& a, const std::string& b) {
  long long x = 0, y = 0;
  auto ra = std::from_chars(a.data(), a.data() + a.size(), x);
  auto rb = std::from_chars(b.data(), b.data() + b.size(), y);
  bool na = ra.ec == std::errc() && ra.ptr == a.data() + a.size();
  bool nb = rb.ec == std::errc() && rb.ptr == b.data() + b.size();
  if (na && nb) return x < y;
  if (na != nb) return na;
  return a < b;
}

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  ProbabilityBand band;
  if (!cfg.band.empty()) band = {cfg.band[0], cfg.band[1]};
  UncertainGraph g;
  if (cfg.model == "gnm") {
    g = generate_gnm(cfg.n, cfg.m, cfg.seed, band);
  } else if (cfg.model == "ba") {
    g = generate_ba(cfg.n, cfg.m, cfg.seed, band);
  } else {
    throw UsageError("unknown model '" + cfg.model + "'");
  }
  if (cfg.output.empty()) {
    write_edge_list(out, g);
    return kExitOk;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw DataError("cannot write " + cfg.output);
  write_edge_list(file, g);
  if (!file) throw DataError("write failed for " + cfg.output);
  return kExitOk;
}

int cmd_build(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Algorithm algo = require_algorithm(cfg.algo.empty() ? "opstar" : cfg.algo);
  PeelOptions options;
  options.bounds = parse_bounds(cfg.bounds);
  LoadedGraph loaded = load_graph(cfg.input, err);
  UncertainGraph& g = loaded.graph;
  if (algo == Algorithm::kEc) {
    for (const auto& e : g.edges()) {
      if (e.p == 1.0) throw DataError("ec mode rejects graphs with p = 1 edges");
    }
  }
  Decomposition d = decompose(g, algo, options);
  for (auto it = d.levels.rbegin(); it != d.levels.rend(); ++it) {
    out << instrumentation_line(*it, algo) << '\n';
  }
  save_index(cfg.output, build_index(d, g));
  return kExitOk;
}

int cmd_query(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.k < 1) throw UsageError("-k must be at least 1");
  UcfIndex index = load_index(cfg.index);
  if (!cfg.input.empty()) {
    LoadedGraph loaded = load_graph(cfg.input, err);
    if (loaded.graph.fingerprint() != index.fingerprint) {
      throw DataError("index fingerprint does not match " + cfg.input);
    }
  }
  if (index.algorithm == "ec") err << "warning: index was built with ec updates and may be wrong\n";
  CoreResult r = query(index, cfg.k, cfg.eta);
  std::vector<std::vector<std::string>> lines;
  for (const auto& comp : r.components) {
    auto& labels = lines.emplace_back();
    for (VertexId u : comp) labels.push_back(index.labels.at(u));
    std::sort(labels.begin(), labels.end(), label_less);
  }
  std::sort(lines.begin(), lines.end(),
            [](const auto& a, const auto& b) { return label_less(a.front(), b.front()); });
  for (const auto& labels : lines) {
    for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? " " : "") << labels[i];
    out << '\n';
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  LoadedGraph loaded = load_graph(cfg.input, err);
  std::optional<UcfIndex> index;
  if (!cfg.index.empty()) index = load_index(cfg.index);
  VerifyReport report = verify_graph(loaded.graph, index ? &*index : nullptr);
  if (!report.pass) {
    out << "FAIL: " << report.failure << '\n';
    return kExitVerifyFailed;
  }
  out << "PASS (" << report.checks << " checks)\n";
  return kExitOk;
}

int cmd_errstat(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Algorithm reference = require_algorithm(cfg.algo.empty() ? "bc" : cfg.algo);
  if (reference == Algorithm::kEc) throw UsageError("errstat needs a correct reference algorithm");
  LoadedGraph loaded = load_graph(cfg.input, err);
  UncertainGraph& g = loaded.graph;
  for (const auto& e : g.edges()) {
    if (e.p == 1.0) throw DataError("ec mode rejects graphs with p = 1 edges");
  }
  Decomposition ref = decompose(g, reference);
  Decomposition ec = decompose(g, Algorithm::kEc);
  out << "k,vertices,errors,ratio\n";
  const std::size_t n = g.vertex_count();
  for (int k = 1; k <= static_cast<int>(ref.k_max); ++k) {
    const PeelResult& run = ref.at(k);
    auto ec_thres = dense_thresholds(ec.at(k), n);
    std::size_t errors = 0;
    for (std::size_t i = 0; i < run.order.size(); ++i) {
      double got = ec_thres[run.order[i]];
      if (!std::isfinite(got) || std::abs(got - run.thresholds[i]) > 1e-6) ++errors;
    }
    double ratio = run.order.empty() ? 0.0 : double(errors) / double(run.order.size());
    out << k << ',' << run.order.size() << ',' << errors << ',' << format_double("%.6f", ratio)
        << '\n';
  }
  return kExitOk;
}

int cmd_bench(const RunConfig& cfg, const std::vector<double>& default_fractions, std::ostream& out,
              std::ostream& err) {
  std::vector<Algorithm> algos;
  for (const auto& name : cfg.algos.empty() ? std::vector<std::string>{"bc", "opstar"} : cfg.algos) {
    algos.push_back(require_algorithm(name));
  }
  PeelOptions options;
  options.bounds = parse_bounds(cfg.bounds);
  const auto& fractions = cfg.fractions.empty() ? default_fractions : cfg.fractions;
  LoadedGraph loaded = load_graph(cfg.input, err);
  out << "fraction,algo,wall_ms,refreshes\n";
  for (double f : fractions) {
    if (!(f >= 0.0 && f <= 1.0)) throw UsageError("fractions must lie in [0, 1]");
    UncertainGraph sub = sample_graph(loaded.graph, f, cfg.seed);
    for (Algorithm algo : algos) {
      double best_ms = 0.0;
      std::size_t refreshes = 0;
      for (int rep = 0; rep < std::max(1, cfg.repeat); ++rep) {
        Decomposition d = decompose(sub, algo, options);
        double ms = 0.0;
        for (const auto& run : d.levels) ms += run.stats.wall_ms;
        if (rep == 0 || ms < best_ms) best_ms = ms;
        refreshes = count_refreshes(d);
      }
      out << format_double("%g", f) << ',' << algorithm_name(algo) << ','
          << format_double("%.3f", best_ms) << ',' << refreshes << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Build and query (k, eta)-core indexes of uncertain graphs", "ucf"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* gen = app.add_subcommand("gen", "Generate a random uncertain graph");
  gen->add_option("--model", cfg.model, "gnm or ba")->check(CLI::IsMember({"gnm", "ba"}));
  gen->add_option("-n", cfg.n, "Vertex count")->required();
  gen->add_option("-m", cfg.m, "Edge count")->required();
  gen->add_option("--seed", cfg.seed);
  gen->add_option("--band", cfg.band, "Probability band lo hi")->expected(2);
  gen->add_option("-o,--output", cfg.output, "Output file (default stdout)");

  auto* build = app.add_subcommand("build", "Build a UCF index");
  build->add_option("-i,--input", cfg.input)->required();
  build->add_option("-o,--output", cfg.output, "Index file")->required();
  build->add_option("--algo", cfg.algo, "bc, op, opstar or ec");
  build->add_option("--bounds", cfg.bounds, "both, topk-only or beta-only");

  auto* query_cmd = app.add_subcommand("query", "List the (k, eta)-cores held by an index");
  query_cmd->add_option("-x,--index", cfg.index)->required();
  query_cmd->add_option("-k", cfg.k)->required();
  query_cmd->add_option("--eta", cfg.eta)->required()->check(CLI::Range(0.0, 1.0));
  query_cmd->add_option("-i,--input", cfg.input, "Graph to check the index fingerprint against");

  auto* verify = app.add_subcommand("verify", "Check the algorithms and an index against the oracles");
  verify->add_option("-i,--input", cfg.input)->required();
  verify->add_option("-x,--index", cfg.index);

  auto* errstat = app.add_subcommand("errstat", "Error ratio of division-based updates per k");
  errstat->add_option("-i,--input", cfg.input)->required();
  errstat->add_option("--algo", cfg.algo, "Reference algorithm: bc, op or opstar");

  std::vector<CLI::App*> timing;
  for (const char* name : {"bench", "sample"}) {
    auto* sub = app.add_subcommand(name, std::string(name) == "bench"
                                             ? "Time the construction algorithms"
                                             : "Time the construction on vertex samples");
    sub->add_option("-i,--input", cfg.input)->required();
    sub->add_option("--algo", cfg.algos, "Algorithms, comma separated")->delimiter(',');
    sub->add_option("--fractions", cfg.fractions, "Vertex sample fractions")->delimiter(',');
    sub->add_option("--seed", cfg.seed);
    sub->add_option("--bounds", cfg.bounds);
    sub->add_option("--repeat", cfg.repeat, "Runs per cell; the fastest is reported");
    timing.push_back(sub);
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(cfg, out);
    if (*build) return cmd_build(cfg, out, err);
    if (*query_cmd) return cmd_query(cfg, out, err);
    if (*verify) return cmd_verify(cfg, out, err);
    if (*errstat) return cmd_errstat(cfg, out, err);
    if (*timing[0]) return cmd_bench(cfg, {1.0}, out, err);
    if (*timing[1]) return cmd_bench(cfg, {0.2, 0.4, 0.6, 0.8, 1.0}, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace ucf::cli
