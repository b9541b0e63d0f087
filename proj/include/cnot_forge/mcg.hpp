#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <climits>
#include <cstdint>
#include <mutex>
#include <tuple>
#include <utility>
#include <vector>

#include "cnot_forge/aecm.hpp"
#include "cnot_forge/circuit.hpp"
#include "cnot_forge/parallel.hpp"
#include "cnot_forge/rng.hpp"
#include "cnot_forge/synth_state.hpp"

namespace cnot_forge {

struct McgConfig {
  bool randomized = false;  // uniform choice among equal-best pairs (MCGP)
  uint64_t seed = 0;
  bool reorder = false;     // drive the sparseness cost, emit a permutation
  AecmConfig aecm{};        // fallback configuration
  int threads = 1;          // pair-scan workers; result is thread-count independent
};

struct McgResult {
  Circuit circuit;
  bool convergent = true;
  std::vector<int> cost_trace;  // initial cost, then one entry per commit
};

namespace detail {

struct ScanChunk {
  int best_cost = INT_MAX;
  std::pair<int, int> first_pair{-1, -1};
  std::vector<std::pair<int, int>> ties;  // filled only in randomized mode
  std::vector<int> singles;               // gate1 indices that finish alone
};

}  // namespace detail

/// Transfers the output-side gates across the permutation remainder: each
/// output gate's lines are relabelled through the remainder's row pattern,
/// and the permutation itself is stored on the circuit.
inline Circuit finalize_reordered(const SynthState& st, const GateLists& gl) {
  const BitMatrix& perm_matrix = st.m;
  const int n = st.n();
  assert(perm_matrix.is_permutation());
  std::vector<int> relabel(n), perm(n);
  for (int i = 0; i < n; ++i)
    relabel[i] = std::countr_zero(perm_matrix.row(i));
  for (int i = 0; i < n; ++i) perm[relabel[i]] = i;
  Circuit c;
  c.n = n;
  c.gates = gl.input;
  for (auto it = gl.output.rbegin(); it != gl.output.rend(); ++it)
    c.gates.push_back({relabel[it->control], relabel[it->target], Side::output});
  c.permutation = std::move(perm);
  return c;
}

/// Multiple CNOT Gate synthesis: exhaustive descent over all two-gate
/// functions, with an AECM partial synthesis as the escape whenever no pair
/// lowers the cost (recorded as nonconvergence). The reorder variant runs
/// the same descent on the sparseness cost and stops at a permutation
/// remainder, absorbed as an output-line relabelling.
inline McgResult mcg_synthesize(const BitMatrix& matrix,
                                const McgConfig& cfg = {}) {
  McgResult result;
  SynthState st = SynthState::from(matrix);
  GateLists gl;
  Rng rng(cfg.seed);
  Rng* rng_ptr = cfg.randomized ? &rng : nullptr;
  AecmConfig acfg = cfg.aecm;
  acfg.randomized = cfg.randomized;
  const bool sparse = cfg.reorder;
  const int n = matrix.size();

  auto metric = [&](const SynthState& s) {
    return sparse ? s.sparseness_cost() : s.cost;
  };
  auto done = [&](const SynthState& s) {
    return sparse ? s.m.is_permutation() : s.m.is_identity();
  };
  auto improvement = [&](const SynthState& s, CNOTGate g) {
    return sparse ? sparseness_improvement(s, g) : improvement_from_cnot(s, g);
  };

  int c1 = metric(st);
  result.cost_trace.push_back(c1);
  std::vector<CNOTGate> gates = n >= 2 ? enumerate_gates(n)
                                       : std::vector<CNOTGate>{};
  // Deterministic tie policy: the main-cost scan keeps the first equal-best
  // pair in enumeration order; the reorder variant prefers gates acting on
  // the lowest target line, i.e. scans in (side, target, control) order.
  if (sparse)
    std::stable_sort(gates.begin(), gates.end(),
                     [](const CNOTGate& a, const CNOTGate& b) {
                       return std::tuple(a.side, a.target, a.control) <
                              std::tuple(b.side, b.target, b.control);
                     });
  const int gate_count = static_cast<int>(gates.size());

  auto commit = [&](CNOTGate g) {
    (g.side == Side::output ? gl.output : gl.input).push_back(g);
    st.apply(g);
  };

  while (c1 > 0) {
    std::vector<detail::ScanChunk> chunks(
        static_cast<size_t>(std::max(1, std::min(cfg.threads, gate_count))));
    parallel_chunks(gate_count, cfg.threads, [&](int chunk, int begin, int end) {
      detail::ScanChunk& out = chunks[chunk];
      for (int i1 = begin; i1 < end; ++i1) {
        SynthState mid = st;
        mid.apply(gates[i1]);
        if (done(mid)) {
          out.singles.push_back(i1);
          continue;
        }
        const int mid_cost = metric(mid);
        for (int i2 = 0; i2 < gate_count; ++i2) {
          if (i2 == i1) continue;
          const int c3 = mid_cost - improvement(mid, gates[i2]);
          if (c3 < out.best_cost) {
            out.best_cost = c3;
            out.first_pair = {i1, i2};
            if (cfg.randomized) {
              out.ties.clear();
              out.ties.push_back({i1, i2});
            }
          } else if (cfg.randomized && c3 == out.best_cost) {
            out.ties.push_back({i1, i2});
          }
        }
      }
    });

    // Deterministic reduction in gate1 enumeration order.
    std::vector<int> singles;
    int best_cost = INT_MAX;
    std::pair<int, int> best_pair{-1, -1};
    std::vector<std::pair<int, int>> ties;
    for (const auto& ch : chunks) {
      singles.insert(singles.end(), ch.singles.begin(), ch.singles.end());
      if (ch.best_cost < best_cost) {
        best_cost = ch.best_cost;
        best_pair = ch.first_pair;
        ties = ch.ties;
      } else if (cfg.randomized && ch.best_cost == best_cost) {
        ties.insert(ties.end(), ch.ties.begin(), ch.ties.end());
      }
    }

    if (!singles.empty()) {
      const int pick =
          rng_ptr ? static_cast<int>(rng_ptr->below(singles.size())) : 0;
      commit(gates[singles[static_cast<size_t>(pick)]]);
      c1 = 0;
      result.cost_trace.push_back(c1);
      break;
    }

    if (best_cost < c1) {
      std::pair<int, int> chosen = best_pair;
      if (rng_ptr && !ties.empty())
        chosen = ties[rng_ptr->below(ties.size())];
      commit(gates[chosen.first]);
      commit(gates[chosen.second]);
      c1 = best_cost;
      result.cost_trace.push_back(c1);
      assert(c1 == metric(st));
    } else {
      result.convergent = false;
      if (!sparse) {
        aecm_run(st, gl, c1 - 1, acfg, rng_ptr);
        c1 = st.cost;
      } else {
        const int target = c1 - 1;
        while (st.sparseness_cost() > target)
          if (!aecm_commit_best(st, gl, 0, acfg, rng_ptr)) break;
        c1 = st.sparseness_cost();
      }
      result.cost_trace.push_back(c1);
    }
  }

  result.circuit = sparse ? finalize_reordered(st, gl)
                          : finalize_circuit(n, gl);
  return result;
}

struct CensusResult {
  int n = 0;
  int trials = 0;
  double mean_gates = 0.0;
  int nonconvergent = 0;
};

/// Runs MCG over random instances and reports the mean gate count and the
/// number of nonconvergent syntheses.
inline CensusResult nonconvergence_census(int n, int trials, uint64_t seed,
                                          int threads = 1) {
  CensusResult res;
  res.n = n;
  res.trials = trials;
  std::vector<int> counts(static_cast<size_t>(trials));
  std::vector<char> nonconv(static_cast<size_t>(trials), 0);
  parallel_chunks(trials, threads, [&](int, int begin, int end) {
    for (int t = begin; t < end; ++t) {
      const BitMatrix m = random_invertible(n, Rng::derive(seed, t));
      const McgResult r = mcg_synthesize(m);
      assert(verify_circuit(r.circuit, m));
      counts[t] = static_cast<int>(r.circuit.gate_count());
      nonconv[t] = r.convergent ? 0 : 1;
    }
  });
  long total = 0;
  for (int t = 0; t < trials; ++t) {
    total += counts[t];
    res.nonconvergent += nonconv[t];
  }
  res.mean_gates = trials ? static_cast<double>(total) / trials : 0.0;
  return res;
}

}  // namespace cnot_forge
