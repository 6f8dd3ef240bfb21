// Command-line front end: solve instances, verify the fast path against the
// exhaustive references, generate seeded instances, and benchmark.
//
// Exit codes: 0 ok, 1 verification mismatch, 2 usage/parse/validation error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bestswap/generator.hpp"
#include "bestswap/io.hpp"
#include "bestswap/oracle.hpp"
#include "bestswap/pipeline.hpp"

namespace {

using namespace bestswap;
using Clock = std::chrono::steady_clock;

Instance LoadInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return ParseInstance(in);
}

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string FormatRows(const ValidatedInstance& vi, const SolveReport& report, bool with_stretch) {
  std::ostringstream out;
  std::optional<Oracle> oracle;
  if (with_stretch) oracle.emplace(vi);
  for (const auto& row : report.rows) {
    const Edge& te = vi.instance.graph.EdgeAt(row.tree_edge);
    out << te.u << '\t' << te.v << '\t';
    if (row.best_swap == kNoEdge) {
      out << "-\t-\t-\t-";
    } else {
      const Edge& fe = vi.instance.graph.EdgeAt(row.best_swap);
      out << fe.u << '\t' << fe.v << '\t' << row.objective.num << '\t' << row.objective.den;
    }
    if (with_stretch) {
      if (row.best_swap == kNoEdge) {
        out << "\t-\t-";
      } else {
        const VertexId q = LowerEndpoint(vi.tree, te);
        const Rational s = oracle->TrueStretch(q, row.best_swap).Reduced();
        out << '\t' << s.num << '\t' << s.den;
      }
    }
    out << '\n';
  }
  return out.str();
}

struct MismatchLog {
  int count = 0;
  std::ostringstream text;
};

// Fast path vs. the exhaustive references, edge by edge.
void CheckAgainstOracle(const ValidatedInstance& vi, const SolveReport& report, MismatchLog& log) {
  const Oracle oracle(vi);
  for (const auto& row : report.rows) {
    const Edge& te = vi.instance.graph.EdgeAt(row.tree_edge);
    const VertexId q = LowerEndpoint(vi.tree, te);
    const auto want = oracle.BruteBestCutEdge(q);
    auto name = [&](EdgeId id) {
      if (id == kNoEdge) return std::string("none");
      const Edge& e = vi.instance.graph.EdgeAt(id);
      return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
    };
    if (!want) {
      if (row.best_swap != kNoEdge) {
        ++log.count;
        log.text << "edge " << name(row.tree_edge) << ": oracle found no swap edge, fast path chose "
                 << name(row.best_swap) << "\n";
      }
      continue;
    }
    if (row.best_swap != want->first || !(row.objective == want->second)) {
      ++log.count;
      log.text << "edge " << name(row.tree_edge) << ": fast " << name(row.best_swap) << " "
               << row.objective.ToString() << " vs oracle " << name(want->first) << " "
               << want->second.ToString() << "\n";
      continue;
    }
    if (!(oracle.TrueStretch(q, row.best_swap) == oracle.MinTrueStretch(q))) {
      ++log.count;
      log.text << "edge " << name(row.tree_edge) << ": chosen swap " << name(row.best_swap)
               << " is not stretch-optimal\n";
    }
  }
}

// Dictionary audit hook: after every update the content must equal the
// from-scratch enumeration.
SolveOptions WithAudit(SolveOptions opts, MismatchLog& log) {
  opts.phase_hook = [&log](VertexId q, const SwapDictionaries::Dict& dict, Engine& eng) {
    const auto got = SwapDictionaries::SnapshotOf(dict);
    const auto want = SwapDictionaries::EnumerateContent(eng.Inst().graph, eng.Tree(),
                                                         eng.Decomposition(), eng.TreeMask(), q);
    if (got != want) {
      ++log.count;
      log.text << "dictionary audit failed below vertex " << q << "\n";
    }
  };
  return opts;
}

int RunSolve(const std::string& input, const std::string& output, bool with_stretch,
             bool no_dynforest, bool counters) {
  const auto vi = Validate(LoadInstance(input));
  SolveOptions opts;
  opts.use_fast_forest = !no_dynforest;
  const auto report = Solve(vi, opts);
  WriteOutput(output, FormatRows(vi, report, with_stretch));
  if (counters) std::cerr << report.counters.ToText();
  return 0;
}

int RunVerify(const std::string& input, int batch, int batch_n, long long batch_m,
              std::uint64_t seed, Weight wmax, bool audit, bool no_dynforest, bool inject_fault,
              bool counters) {
  std::vector<Instance> instances;
  if (!input.empty()) {
    instances.push_back(LoadInstance(input));
  } else {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < batch; ++i) {
      GenConfig cfg;
      cfg.n = batch_n > 0 ? batch_n : 4 + static_cast<int>(rng() % 57);
      const long long complete = static_cast<long long>(cfg.n) * (cfg.n - 1) / 2;
      cfg.m = batch_m > 0 ? std::min(batch_m, complete)
                          : cfg.n + static_cast<long long>(rng() % (complete - cfg.n + 1));
      cfg.seed = rng();
      cfg.max_weight = wmax;
      instances.push_back(GenerateInstance(cfg));
    }
  }

  MismatchLog log;
  CounterReport last_counters;
  long long edges_checked = 0;
  for (const auto& inst : instances) {
    const auto vi = Validate(inst);
    SolveOptions opts;
    opts.use_fast_forest = !no_dynforest;
    opts.fault_injection = inject_fault;
    if (audit) opts = WithAudit(opts, log);
    const auto report = Solve(vi, opts);
    CheckAgainstOracle(vi, report, log);
    edges_checked += static_cast<long long>(report.rows.size());
    last_counters = report.counters;
  }

  std::cout << "instances=" << instances.size() << "\n"
            << "edges_checked=" << edges_checked << "\n"
            << "mismatches=" << log.count << "\n";
  if (counters || instances.size() == 1) std::cout << last_counters.ToText();
  if (log.count > 0) {
    std::cout << log.text.str();
    std::cout << "FAIL\n";
    return 1;
  }
  std::cout << "PASS\n";
  return 0;
}

int RunGen(const std::string& output, int n, long long m, std::uint64_t seed, Weight wmax,
           bool mst) {
  GenConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.seed = seed;
  cfg.max_weight = wmax;
  cfg.mst_tree = mst;
  const Instance inst = GenerateInstance(cfg);
  std::ostringstream out;
  out << "# n=" << n << " m=" << m << " seed=" << seed << " wmax=" << wmax << " mst=" << mst
      << "\n";
  WriteInstance(inst, out);
  WriteOutput(output, out.str());
  return 0;
}

int RunBench(const std::string& input, const std::string& doubling, int n, long long m,
             std::uint64_t seed, Weight wmax, int oracle_samples, bool no_dynforest) {
  SolveOptions opts;
  opts.use_fast_forest = !no_dynforest;

  if (!doubling.empty()) {
    std::vector<int> sizes;
    std::stringstream ss(doubling);
    for (std::string tok; std::getline(ss, tok, ',');) sizes.push_back(std::stoi(tok));
    struct Row {
      int n;
      long long m;
      double fast = 0, oracle_sampled = 0, oracle_est = 0;
    };
    std::vector<Row> rows;
    std::cout << "n\tm\tfast_s\toracle_sample_s\toracle_est_s\tinserts\tqueries\n";
    for (int size : sizes) {
      GenConfig cfg;
      cfg.n = size;
      cfg.m = static_cast<long long>(size) * (size - 1) / 2;
      cfg.seed = seed + static_cast<std::uint64_t>(size);
      cfg.max_weight = wmax;
      const auto vi = Validate(GenerateInstance(cfg));

      const auto t0 = Clock::now();
      const auto report = Solve(vi, opts);
      const double fast = std::chrono::duration<double>(Clock::now() - t0).count();

      // quadratic reference on a sample of evenly spaced tree edges,
      // extrapolated to all n-1 edges
      const Oracle oracle(vi);
      const int edges = static_cast<int>(vi.instance.tree_edges.size());
      const int samples = std::min(oracle_samples, edges);
      const auto t1 = Clock::now();
      for (int i = 0; i < samples; ++i) {
        const EdgeId te = vi.instance.tree_edges[static_cast<size_t>(i) * edges / samples];
        const VertexId q = LowerEndpoint(vi.tree, vi.instance.graph.EdgeAt(te));
        (void)oracle.BruteBestCutEdge(q);
      }
      const double sampled = std::chrono::duration<double>(Clock::now() - t1).count();
      const double est = sampled / samples * edges;
      rows.push_back({size, cfg.m, fast, sampled, est});
      std::cout << size << '\t' << cfg.m << '\t' << fast << '\t' << sampled << '\t' << est << '\t'
                << report.counters.total_inserts << '\t' << report.counters.envelope_queries
                << "\n";
    }
    for (size_t i = 1; i < rows.size(); ++i) {
      std::cout << "ratio " << rows[i - 1].n << "->" << rows[i].n
                << ": fast=" << rows[i].fast / rows[i - 1].fast
                << " oracle_est=" << rows[i].oracle_est / rows[i - 1].oracle_est << "\n";
    }
    return 0;
  }

  Instance inst;
  if (!input.empty()) {
    inst = LoadInstance(input);
  } else {
    GenConfig cfg;
    cfg.n = n;
    cfg.m = m > 0 ? m : static_cast<long long>(n) * (n - 1) / 2;
    cfg.seed = seed;
    cfg.max_weight = wmax;
    inst = GenerateInstance(cfg);
  }
  const auto vi = Validate(inst);
  const auto t0 = Clock::now();
  const auto report = Solve(vi, opts);
  const double total = std::chrono::duration<double>(Clock::now() - t0).count();
  const auto& c = report.counters;
  std::cout << "total_s=" << total << "\n"
            << "merge_s=" << c.merge_seconds << "\n"
            << "subphase_s=" << c.subphase_seconds << "\n"
            << "build_s=" << total - c.merge_seconds - c.subphase_seconds << "\n"
            << "peak_line_bytes_est=" << c.peak_live_lines * 96 << "\n"
            << c.ToText();
  return 0;
}

int RunSelftest() {
  int failures = 0;
  auto report_line = [&](const std::string& what, bool ok) {
    std::cout << (ok ? "[ok] " : "[FAIL] ") << what << "\n";
    if (!ok) ++failures;
  };

  // fixtures
  for (const Instance& inst : {FixtureG2(), FixtureC4()}) {
    const auto vi = Validate(inst);
    MismatchLog log;
    const auto report = Solve(vi);
    CheckAgainstOracle(vi, report, log);
    report_line("fixture solve matches the exhaustive references", log.count == 0);
  }

  // seeded batch with dictionary audits
  {
    MismatchLog log;
    std::mt19937_64 rng(424242);
    for (int i = 0; i < 25; ++i) {
      GenConfig cfg;
      cfg.n = 4 + static_cast<int>(rng() % 37);
      const long long complete = static_cast<long long>(cfg.n) * (cfg.n - 1) / 2;
      cfg.m = cfg.n + static_cast<long long>(rng() % (complete - cfg.n + 1));
      cfg.seed = rng();
      const auto vi = Validate(GenerateInstance(cfg));
      SolveOptions opts;
      const auto report = Solve(vi, WithAudit(opts, log));
      CheckAgainstOracle(vi, report, log);
      SolveOptions ref;
      ref.use_fast_forest = false;
      const auto slow = Solve(vi, ref);
      for (size_t k = 0; k < slow.rows.size(); ++k) {
        if (slow.rows[k].best_swap != report.rows[k].best_swap) ++log.count;
      }
    }
    report_line("seeded batch matches references and audits", log.count == 0);
  }

  // the corrupted engine must be caught
  {
    const auto vi = Validate(FixtureG2());
    SolveOptions opts;
    opts.fault_injection = true;
    MismatchLog log;
    CheckAgainstOracle(vi, Solve(vi, opts), log);
    report_line("fault injection is detected", log.count > 0);
  }

  // solve | verify round trip through the text format
  {
    GenConfig cfg;
    cfg.n = 20;
    cfg.m = 50;
    cfg.seed = 7;
    const Instance inst = GenerateInstance(cfg);
    const Instance back = ParseInstance(WriteInstance(inst));
    MismatchLog log;
    const auto vi = Validate(back);
    CheckAgainstOracle(vi, Solve(vi), log);
    report_line("text round trip solves identically", log.count == 0);
  }

  std::cout << (failures == 0 ? "PASS" : "FAIL") << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"best swap edges for tree spanners"};
  app.require_subcommand(1);

  std::string input, output, doubling;
  int n = 8, batch = 20, oracle_samples = 12;
  long long m = -1;
  std::uint64_t seed = 1;
  long long wmax = 100;
  bool with_stretch = false, no_dynforest = false, counters = false, audit = false,
       inject_fault = false, mst = false;

  auto* solve = app.add_subcommand("solve", "compute a best swap edge per tree edge");
  solve->add_option("input", input, "instance file")->required();
  solve->add_option("-o,--output", output, "output path (default stdout)");
  solve->add_flag("--oracle", with_stretch, "append the true stretch of each chosen edge");
  solve->add_flag("--no-dynforest", no_dynforest, "use the linear-scan attachment queries");
  solve->add_flag("--counters", counters, "dump instrumentation counters to stderr");

  auto* verify = app.add_subcommand("verify", "check the fast path against exhaustive references");
  verify->add_option("-i,--input", input, "instance file (otherwise a seeded batch)");
  verify->add_option("--batch", batch, "number of random instances");
  verify->add_option("-n", n, "vertices per random instance (0 = random)")->capture_default_str();
  verify->add_option("-m", m, "edges per random instance (-1 = random)");
  verify->add_option("--seed", seed, "batch seed");
  verify->add_option("--wmax", wmax, "maximum edge weight");
  verify->add_flag("--audit", audit, "also audit dictionary contents per edge");
  verify->add_flag("--no-dynforest", no_dynforest, "use the linear-scan attachment queries");
  verify->add_flag("--inject-fault", inject_fault, "corrupt the engine to test the harness");
  verify->add_flag("--counters", counters, "print the counter report");

  auto* gen = app.add_subcommand("gen", "generate a seeded 2-edge-connected instance");
  gen->add_option("-n", n, "vertex count")->required();
  gen->add_option("-m", m, "edge count")->required();
  gen->add_option("--seed", seed, "seed");
  gen->add_option("--wmax", wmax, "maximum edge weight");
  gen->add_flag("--mst", mst, "use the minimum spanning tree as the tree");
  gen->add_option("-o,--output", output, "output path (default stdout)");

  auto* bench = app.add_subcommand("bench", "timing and counter report");
  bench->add_option("-i,--input", input, "instance file");
  bench->add_option("--doubling", doubling, "comma list of dense sizes, e.g. 128,256,512");
  bench->add_option("-n", n, "vertex count when generating");
  bench->add_option("-m", m, "edge count when generating (default dense)");
  bench->add_option("--seed", seed, "seed");
  bench->add_option("--wmax", wmax, "maximum edge weight");
  bench->add_option("--oracle-samples", oracle_samples, "edges sampled for the quadratic reference");
  bench->add_flag("--no-dynforest", no_dynforest, "use the linear-scan attachment queries");

  auto* selftest = app.add_subcommand("selftest", "built-in fixtures and seeded batch");
  (void)selftest;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve->parsed()) return RunSolve(input, output, with_stretch, no_dynforest, counters);
    if (verify->parsed()) {
      return RunVerify(input, batch, n == 8 ? 0 : n, m, seed, wmax, audit, no_dynforest,
                       inject_fault, counters);
    }
    if (gen->parsed()) return RunGen(output, n, m, seed, wmax, mst);
    if (bench->parsed()) {
      return RunBench(input, doubling, n, m, seed, wmax, oracle_samples, no_dynforest);
    }
    return RunSelftest();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "invalid instance: " << e.what() << "\n";
    return 2;
  } catch (const GenError& e) {
    std::cerr << "generation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
