#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cnot_forge/aecm.hpp"
#include "cnot_forge/baseline.hpp"
#include "cnot_forge/bit_matrix.hpp"
#include "cnot_forge/fixtures.hpp"
#include "cnot_forge/mcg.hpp"
#include "cnot_forge/oracle.hpp"
#include "cnot_forge/parallel.hpp"
#include "cnot_forge/rng.hpp"

namespace cnot_forge {

struct BenchRecord {
  std::string method;
  int n = 0;
  int trials = 0;
  double mean = 0, median = 0, min = 0, max = 0, stddev = 0;
  int nonconvergent = 0;
  double seconds = 0;
};

namespace detail {

inline BenchRecord summarize(const std::string& method, int n,
                             std::vector<int> counts, int nonconvergent,
                             double seconds) {
  BenchRecord r;
  r.method = method;
  r.n = n;
  r.trials = static_cast<int>(counts.size());
  r.nonconvergent = nonconvergent;
  r.seconds = seconds;
  if (counts.empty()) return r;
  std::sort(counts.begin(), counts.end());
  r.min = counts.front();
  r.max = counts.back();
  const size_t k = counts.size();
  r.median = k % 2 ? counts[k / 2]
                   : (counts[k / 2 - 1] + counts[k / 2]) / 2.0;
  double sum = 0;
  for (int v : counts) sum += v;
  r.mean = sum / static_cast<double>(k);
  double var = 0;
  for (int v : counts) var += (v - r.mean) * (v - r.mean);
  r.stddev = k > 1 ? std::sqrt(var / static_cast<double>(k - 1)) : 0.0;
  return r;
}

inline double elapsed_seconds(
    std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

// Runs fn over `trials` indices in parallel, collecting verified gate counts
// by trial index. fn returns (gate count, nonconvergent flag).
inline BenchRecord bench_trials(
    const std::string& method, int n, int trials, int threads,
    const std::function<std::pair<int, bool>(int)>& fn) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<int> counts(static_cast<size_t>(trials));
  std::vector<char> nonconv(static_cast<size_t>(trials), 0);
  parallel_chunks(trials, threads, [&](int, int begin, int end) {
    for (int t = begin; t < end; ++t) {
      auto [count, flag] = fn(t);
      counts[t] = count;
      nonconv[t] = flag;
    }
  });
  int bad = 0;
  for (char f : nonconv) bad += f;
  return summarize(method, n, std::move(counts), bad,
                   elapsed_seconds(start));
}

}  // namespace detail

/// Method comparison over random instances: AECM, the multi-column baseline,
/// and MCG (skipped above the line cap) on the same matrices per dimension.
inline std::vector<BenchRecord> run_table1(const std::vector<int>& sizes,
                                           int trials, uint64_t seed,
                                           int mcg_line_cap = 40,
                                           int threads = 1) {
  std::vector<BenchRecord> records;
  for (int n : sizes) {
    auto instance = [&, n](int t) {
      return random_invertible(n, Rng::derive(seed ^ (uint64_t)n, t));
    };
    records.push_back(detail::bench_trials(
        "aecm", n, trials, threads, [&](int t) -> std::pair<int, bool> {
          const BitMatrix m = instance(t);
          const Circuit c = aecm_synthesize(m);
          if (!verify_circuit(c, m))
            throw std::logic_error("aecm round-trip failure");
          return {static_cast<int>(c.gate_count()), false};
        }));
    records.push_back(detail::bench_trials(
        "algorithm1", n, trials, threads, [&](int t) -> std::pair<int, bool> {
          const BitMatrix m = instance(t);
          const Circuit c = algorithm1_synthesis(m);
          if (!verify_circuit(c, m))
            throw std::logic_error("algorithm1 round-trip failure");
          return {static_cast<int>(c.gate_count()), false};
        }));
    if (n <= mcg_line_cap) {
      records.push_back(detail::bench_trials(
          "mcg", n, trials, threads, [&](int t) -> std::pair<int, bool> {
            const BitMatrix m = instance(t);
            const McgResult r = mcg_synthesize(m);
            if (!verify_circuit(r.circuit, m))
              throw std::logic_error("mcg round-trip failure");
            return {static_cast<int>(r.circuit.gate_count()), !r.convergent};
          }));
    }
  }
  return records;
}

struct HitRates {
  int samples = 0;
  int mcg_hits = 0, aecm_hits = 0, algorithm1_hits = 0;
  int mcg_nonconvergent = 0;

  double mcg_rate() const { return samples ? (double)mcg_hits / samples : 0; }
  double aecm_rate() const {
    return samples ? (double)aecm_hits / samples : 0;
  }
  double algorithm1_rate() const {
    return samples ? (double)algorithm1_hits / samples : 0;
  }
};

/// Fraction of syntheses matching the oracle minimum, per method, over an
/// explicit list of invertible matrices of the table's dimension.
inline HitRates hit_rates_for(const std::vector<BitMatrix>& matrices,
                              const DistanceTable& table, int threads = 1) {
  HitRates rates;
  rates.samples = static_cast<int>(matrices.size());
  const int count = rates.samples;
  std::vector<uint8_t> mcg_hit(count), aecm_hit(count), alg1_hit(count),
      nonconv(count);
  parallel_chunks(count, threads, [&](int, int begin, int end) {
    for (int t = begin; t < end; ++t) {
      const BitMatrix& m = matrices[t];
      const int best = exact_min_count(m, table);
      const McgResult mr = mcg_synthesize(m);
      const Circuit ac = aecm_synthesize(m);
      const Circuit gc = algorithm1_synthesis(m);
      if (!verify_circuit(mr.circuit, m) || !verify_circuit(ac, m) ||
          !verify_circuit(gc, m))
        throw std::logic_error("hit-rate round-trip failure");
      mcg_hit[t] = static_cast<int>(mr.circuit.gate_count()) == best;
      aecm_hit[t] = static_cast<int>(ac.gate_count()) == best;
      alg1_hit[t] = static_cast<int>(gc.gate_count()) == best;
      nonconv[t] = !mr.convergent;
    }
  });
  for (int t = 0; t < count; ++t) {
    rates.mcg_hits += mcg_hit[t];
    rates.aecm_hits += aecm_hit[t];
    rates.algorithm1_hits += alg1_hit[t];
    rates.mcg_nonconvergent += nonconv[t];
  }
  return rates;
}

/// Uniform sample from GL(5, 2) by rejection on random bit patterns.
inline std::vector<BitMatrix> sample_gl5(int samples, uint64_t seed) {
  std::vector<BitMatrix> out;
  out.reserve(static_cast<size_t>(samples));
  Rng rng(seed);
  while (static_cast<int>(out.size()) < samples) {
    BitMatrix m = decode_matrix(static_cast<uint32_t>(rng.below(1u << 25)), 5);
    if (m.invertible()) out.push_back(std::move(m));
  }
  return out;
}

inline HitRates run_hit_rates(int samples, uint64_t seed,
                              const DistanceTable& table, int threads = 1) {
  return hit_rates_for(sample_gl5(samples, seed), table, threads);
}

/// Probabilistic-variant statistics on the bundled 16x16 test function:
/// `trials` independently seeded MCGP and AECMP runs.
inline std::pair<BenchRecord, BenchRecord> run_table3(int trials,
                                                      uint64_t seed,
                                                      int threads = 1) {
  const BitMatrix m = fixtures::bench16x16();
  BenchRecord mcgp = detail::bench_trials(
      "mcgp", m.size(), trials, threads, [&](int t) -> std::pair<int, bool> {
        McgConfig cfg;
        cfg.randomized = true;
        cfg.seed = Rng::derive(seed, t);
        const McgResult r = mcg_synthesize(m, cfg);
        if (!verify_circuit(r.circuit, m))
          throw std::logic_error("mcgp round-trip failure");
        return {static_cast<int>(r.circuit.gate_count()), !r.convergent};
      });
  BenchRecord aecmp = detail::bench_trials(
      "aecmp", m.size(), trials, threads, [&](int t) -> std::pair<int, bool> {
        AecmConfig cfg;
        cfg.randomized = true;
        cfg.seed = Rng::derive(seed ^ 0x5bd1e995u, t);
        const Circuit c = aecm_synthesize(m, cfg);
        if (!verify_circuit(c, m))
          throw std::logic_error("aecmp round-trip failure");
        return {static_cast<int>(c.gate_count()), false};
      });
  return {std::move(mcgp), std::move(aecmp)};
}

inline constexpr std::string_view kCsvHeader =
    "method,n,trials,mean,median,min,max,stddev,nonconvergent,seconds";

inline std::string to_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const BenchRecord& r : records) {
    out << r.method << ',' << r.n << ',' << r.trials << ',' << r.mean << ','
        << r.median << ',' << r.min << ',' << r.max << ',' << r.stddev << ','
        << r.nonconvergent << ',' << r.seconds << '\n';
  }
  return out.str();
}

inline std::string to_markdown(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "| method | n | trials | mean | median | min | max | stddev | "
         "nonconvergent |\n";
  out << "|---|---|---|---|---|---|---|---|---|\n";
  for (const BenchRecord& r : records) {
    out << "| " << r.method << " | " << r.n << " | " << r.trials << " | "
        << r.mean << " | " << r.median << " | " << r.min << " | " << r.max
        << " | " << r.stddev << " | " << r.nonconvergent << " |\n";
  }
  return out.str();
}

}  // namespace cnot_forge
