// Command-line front end: synthesis, verification, oracle tables, and the
// benchmark harness over the plain text matrix/circuit formats.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cnot_forge/aecm.hpp"
#include "cnot_forge/baseline.hpp"
#include "cnot_forge/bit_matrix.hpp"
#include "cnot_forge/circuit.hpp"
#include "cnot_forge/fixtures.hpp"
#include "cnot_forge/harness.hpp"
#include "cnot_forge/mcg.hpp"
#include "cnot_forge/oracle.hpp"

namespace cf = cnot_forge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitParse = 2;
constexpr int kExitDimension = 3;

cf::BitMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cf::ParseError("cannot open matrix file: " + path);
  return cf::BitMatrix::parse(in);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cf::ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write file: " + path);
}

// The circuit format carries no explicit line count; infer it from the
// permutation header when present, otherwise from the highest line index.
cf::Circuit read_circuit_file(const std::string& path, int n_hint = 0) {
  const std::string text = read_file(path);
  int n = n_hint;
  if (n == 0) {
    std::istringstream in(text);
    std::string word;
    int value, max_line = 0;
    while (in >> word) {
      if (word == "perm" || word == "cnot") continue;
      std::istringstream vs(word);
      if (vs >> value) max_line = std::max(max_line, value);
    }
    n = max_line + 1;
    std::istringstream probe(text);
    std::string first;
    std::getline(probe, first);
    if (first.rfind("perm", 0) == 0) {
      std::istringstream ps(first);
      ps >> first;
      int count = 0, v;
      while (ps >> v) ++count;
      n = count;
    }
    n = std::max(n, 1);
  }
  return cf::parse_circuit(text, n);
}

std::string table_dir_or_default(std::string flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("CNOT_FORGE_TABLE_DIR"))
    if (*env) return env;
  return ".";
}

std::string table_path(const std::string& dir, int n) {
  return dir + "/gl" + std::to_string(n) + ".dist";
}

// Loads the cached table for n, building and saving it on a miss.
cf::DistanceTable obtain_table(const std::string& dir, int n) {
  const std::string path = table_path(dir, n);
  if (std::filesystem::exists(path)) return cf::load_distance_table(path);
  cf::DistanceTable table = cf::build_distance_table(n);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  cf::save_distance_table(table, path);
  return table;
}

struct SynthOptions {
  std::string method = "mcg";
  std::string input, output;
  uint64_t seed = 0;
  int threshold = 0;
  int stage1_threshold = 2;
  int section_size = 0;
  int passes = 1;
  int threads = 1;
  bool no_verify = false;
};

struct SynthOutcome {
  cf::Circuit circuit;
  bool convergent = true;
  int residual_cost = 0;
};

SynthOutcome run_one_synthesis(const cf::BitMatrix& m,
                               const SynthOptions& opt, uint64_t seed) {
  SynthOutcome out;
  if (opt.method == "gaussian") {
    out.circuit = cf::gaussian_synthesis(m);
  } else if (opt.method == "algorithm1") {
    out.circuit = cf::algorithm1_synthesis(m, opt.section_size);
  } else if (opt.method == "aecm" || opt.method == "aecmp") {
    cf::AecmConfig cfg;
    cfg.stage1_min_improvement = opt.stage1_threshold;
    cfg.randomized = opt.method == "aecmp";
    cfg.seed = seed;
    if (opt.threshold > 0) {
      cf::SynthState st = cf::SynthState::from(m);
      cf::GateLists gl;
      cf::Rng rng(seed);
      out.residual_cost = cf::aecm_run(st, gl, opt.threshold, cfg,
                                       cfg.randomized ? &rng : nullptr);
      out.circuit = cf::finalize_circuit(m.size(), gl);
    } else {
      out.circuit = cf::aecm_synthesize(m, cfg);
    }
  } else if (opt.method == "mcg" || opt.method == "mcgp" ||
             opt.method == "mcg-reorder") {
    cf::McgConfig cfg;
    cfg.randomized = opt.method == "mcgp";
    cfg.reorder = opt.method == "mcg-reorder";
    cfg.seed = seed;
    cfg.threads = opt.threads;
    cfg.aecm.stage1_min_improvement = opt.stage1_threshold;
    const cf::McgResult r = cf::mcg_synthesize(m, cfg);
    out.circuit = r.circuit;
    out.convergent = r.convergent;
  } else {
    throw CLI::ValidationError("unknown method: " + opt.method);
  }
  return out;
}

int cmd_synth(const SynthOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  const cf::BitMatrix m = read_matrix_file(opt.input);
  const bool probabilistic = opt.method == "aecmp" || opt.method == "mcgp";
  const int passes = probabilistic ? opt.passes : 1;
  std::optional<SynthOutcome> best;
  for (int p = 0; p < passes; ++p) {
    SynthOutcome got =
        run_one_synthesis(m, opt, cf::Rng::derive(opt.seed, p));
    if (!best || got.circuit.gate_count() < best->circuit.gate_count())
      best = std::move(got);
  }
  const bool partial = opt.threshold > 0;
  if (!partial && !opt.no_verify && !cf::verify_circuit(best->circuit, m)) {
    std::cerr << "verification failed: circuit does not realize the input\n";
    return kExitMismatch;
  }
  const std::string text = cf::circuit_to_text(best->circuit);
  if (!opt.output.empty())
    write_file(opt.output, text);
  std::cout << "method=" << opt.method << " n=" << m.size()
            << " gates=" << best->circuit.gate_count()
            << " convergent=" << (best->convergent ? "true" : "false");
  if (partial) std::cout << " residual_cost=" << best->residual_cost;
  std::cout << '\n';
  if (opt.output.empty()) std::cout << text;
  std::cerr << "elapsed " << cf::detail::elapsed_seconds(start) << "s\n";
  return kExitOk;
}

int cmd_verify(const std::string& matrix_path,
               const std::string& circuit_path) {
  const cf::BitMatrix m = read_matrix_file(matrix_path);
  const cf::Circuit c = read_circuit_file(circuit_path, m.size());
  const cf::BitMatrix got = cf::circuit_to_matrix(c);
  if (got == m) {
    std::cout << "ok\n";
    return kExitOk;
  }
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j)
      if (m.get(i, j) != got.get(i, j)) {
        std::cout << "mismatch at (" << i << ", " << j << "): expected "
                  << m.get(i, j) << ", circuit gives " << got.get(i, j)
                  << '\n';
        return kExitMismatch;
      }
  return kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CNOT-only (linear reversible) circuit synthesis toolkit"};
  app.require_subcommand(1);

  SynthOptions synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "synthesize a circuit");
  synth_cmd->add_option("--method", synth.method,
                        "aecm|mcg|mcg-reorder|gaussian|algorithm1|aecmp|mcgp");
  synth_cmd->add_option("--in", synth.input, "matrix file")->required();
  synth_cmd->add_option("--out", synth.output, "circuit output file");
  synth_cmd->add_option("--seed", synth.seed, "RNG seed");
  synth_cmd->add_option("--threshold", synth.threshold,
                        "stop once the cost reaches this value (aecm only)")
      ->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--stage1-threshold", synth.stage1_threshold,
                        "minimum stage-1 improvement");
  synth_cmd->add_option("--section-size", synth.section_size,
                        "column section width (algorithm1)");
  synth_cmd->add_option("--passes", synth.passes, "best-of-k passes")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--threads", synth.threads, "scan workers");
  synth_cmd->add_flag("--no-verify", synth.no_verify,
                      "skip the round-trip post-check");

  std::string verify_matrix, verify_circuit;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "check a circuit against a matrix");
  verify_cmd->add_option("matrix", verify_matrix, "matrix file")->required();
  verify_cmd->add_option("circuit", verify_circuit, "circuit file")
      ->required();

  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "exact-minimum table operations");
  oracle_cmd->require_subcommand(1);
  int oracle_n = 5;
  std::string oracle_dir, oracle_file, oracle_out;
  CLI::App* ob = oracle_cmd->add_subcommand("build", "build and cache the table");
  ob->add_option("-n", oracle_n)->check(CLI::Range(2, 5));
  ob->add_option("--table-dir", oracle_dir);
  CLI::App* oh = oracle_cmd->add_subcommand("hist",
                                            "gate-count histogram as CSV");
  oh->add_option("-n", oracle_n)->check(CLI::Range(2, 5));
  oh->add_option("--table-dir", oracle_dir);
  CLI::App* om = oracle_cmd->add_subcommand("min", "exact minimum for a matrix");
  om->add_option("file", oracle_file)->required();
  om->add_option("--table-dir", oracle_dir);
  CLI::App* op = oracle_cmd->add_subcommand(
      "peephole", "rewrite a circuit through the exact table");
  op->add_option("file", oracle_file)->required();
  op->add_option("--table-dir", oracle_dir);
  op->add_option("--out", oracle_out);
  int peephole_lines = 0;
  op->add_option("--lines", peephole_lines, "line count of the circuit");

  CLI::App* bench_cmd = app.add_subcommand("bench", "benchmark harness");
  bench_cmd->require_subcommand(1);
  std::vector<int> bench_sizes{8, 12, 16};
  int bench_trials = 100, bench_samples = 10000, bench_line_cap = 40,
      bench_threads = cf::default_thread_count();
  uint64_t bench_seed = 1;
  std::string bench_out, bench_dir;
  bool bench_markdown = false, bench_no_timing = false;
  CLI::App* bt1 = bench_cmd->add_subcommand("table1", "method comparison");
  bt1->add_option("--sizes", bench_sizes)->delimiter(',');
  bt1->add_option("--trials", bench_trials);
  bt1->add_option("--seed", bench_seed);
  bt1->add_option("--line-cap", bench_line_cap, "skip MCG above this size");
  bt1->add_option("--threads", bench_threads);
  bt1->add_option("--out", bench_out);
  bt1->add_flag("--markdown", bench_markdown);
  bt1->add_flag("--no-timing", bench_no_timing,
                "zero the seconds column for reproducible reports");
  CLI::App* bhr = bench_cmd->add_subcommand("hitrates",
                                            "exact-minimum hit rates at n=5");
  bhr->add_option("--samples", bench_samples);
  bhr->add_option("--seed", bench_seed);
  bhr->add_option("--threads", bench_threads);
  bhr->add_option("--table-dir", bench_dir);
  CLI::App* bt3 = bench_cmd->add_subcommand(
      "table3", "probabilistic statistics on the bundled 16x16 function");
  bt3->add_option("--trials", bench_trials);
  bt3->add_option("--seed", bench_seed);
  bt3->add_option("--threads", bench_threads);
  bt3->add_option("--out", bench_out);
  bt3->add_flag("--markdown", bench_markdown);
  bt3->add_flag("--no-timing", bench_no_timing);

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth_cmd->parsed()) return cmd_synth(synth);
    if (verify_cmd->parsed()) return cmd_verify(verify_matrix, verify_circuit);

    if (oracle_cmd->parsed()) {
      const std::string dir = table_dir_or_default(oracle_dir);
      if (ob->parsed()) {
        obtain_table(dir, oracle_n);
        std::cout << "table ready: " << table_path(dir, oracle_n) << '\n';
      } else if (oh->parsed()) {
        const cf::DistanceTable table = obtain_table(dir, oracle_n);
        std::cout << "gates,functions\n";
        const auto hist = table.histogram();
        for (size_t d = 0; d < hist.size(); ++d)
          std::cout << d << ',' << hist[d] << '\n';
      } else if (om->parsed()) {
        const cf::BitMatrix m = read_matrix_file(oracle_file);
        if (m.size() > cf::kMaxOracleLines)
          throw cf::DimensionError("oracle supports up to 5 lines");
        const cf::DistanceTable table = obtain_table(dir, m.size());
        std::cout << cf::exact_min_count(m, table) << '\n';
      } else if (op->parsed()) {
        cf::Circuit c = read_circuit_file(oracle_file, peephole_lines);
        const cf::DistanceTable table =
            obtain_table(dir, std::min(c.n, cf::kMaxOracleLines));
        const cf::Circuit optimized = cf::peephole_optimize(c, table);
        const std::string text = cf::circuit_to_text(optimized);
        if (!oracle_out.empty())
          write_file(oracle_out, text);
        else
          std::cout << text;
        std::cerr << "gates " << c.gate_count() << " -> "
                  << optimized.gate_count() << '\n';
      }
      return kExitOk;
    }

    if (bench_cmd->parsed()) {
      std::vector<cf::BenchRecord> records;
      if (bt1->parsed()) {
        records = cf::run_table1(bench_sizes, bench_trials, bench_seed,
                                 bench_line_cap, bench_threads);
      } else if (bt3->parsed()) {
        auto [mcgp, aecmp] =
            cf::run_table3(bench_trials, bench_seed, bench_threads);
        records = {mcgp, aecmp};
      } else if (bhr->parsed()) {
        if (bench_samples > 0) {
          const cf::DistanceTable table =
              obtain_table(table_dir_or_default(bench_dir), 5);
          const cf::HitRates r =
              cf::run_hit_rates(bench_samples, bench_seed, table,
                                bench_threads);
          std::cout << "method,samples,exact_minimum_hits,rate\n";
          std::cout << "mcg," << r.samples << ',' << r.mcg_hits << ','
                    << r.mcg_rate() << '\n';
          std::cout << "aecm," << r.samples << ',' << r.aecm_hits << ','
                    << r.aecm_rate() << '\n';
          std::cout << "algorithm1," << r.samples << ','
                    << r.algorithm1_hits << ',' << r.algorithm1_rate()
                    << '\n';
          std::cout << "# mcg nonconvergent: " << r.mcg_nonconvergent << '\n';
        }
        return kExitOk;
      }
      if (bench_no_timing)
        for (auto& r : records) r.seconds = 0;
      const std::string report =
          bench_markdown ? cf::to_markdown(records) : cf::to_csv(records);
      if (!bench_out.empty())
        write_file(bench_out, report);
      else
        std::cout << report;
      return kExitOk;
    }
  } catch (const cf::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const cf::DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << '\n';
    return kExitDimension;
  } catch (const cf::SingularMatrixError& e) {
    std::cerr << "singular matrix: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }
  return kExitOk;
}
