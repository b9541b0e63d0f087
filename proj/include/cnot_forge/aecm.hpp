#pragma once

#include <cassert>
#include <cstdint>
#include <utility>
#include <vector>

#include "cnot_forge/circuit.hpp"
#include "cnot_forge/gate.hpp"
#include "cnot_forge/rng.hpp"
#include "cnot_forge/synth_state.hpp"

namespace cnot_forge {

/// The two gate lists a bidirectional synthesis grows, one per side.
struct GateLists {
  std::vector<CNOTGate> input;
  std::vector<CNOTGate> output;

  size_t total() const { return input.size() + output.size(); }
};

/// Finalization: output-side gates are appended in reverse order to the
/// input-side gates, giving a pure input->output circuit.
inline Circuit finalize_circuit(int n, const GateLists& gl) {
  Circuit c;
  c.n = n;
  c.gates = gl.input;
  for (auto it = gl.output.rbegin(); it != gl.output.rend(); ++it)
    c.gates.push_back(*it);
  return c;
}

struct AecmConfig {
  int stage1_min_improvement = 2;
  bool randomized = false;  // break ties uniformly at random (AECMP)
  uint64_t seed = 0;
};

/// True iff row i and column i of m are both the unit vector e_i.
inline bool diagonal_solved(const BitMatrix& m, int i) {
  if (m.row(i) != (1ULL << i)) return false;
  for (int j = 0; j < m.size(); ++j)
    if (j != i && m.get(j, i)) return false;
  return true;
}

inline bool diagonal_solved(const SynthState& s, int i) {
  const uint64_t unit = 1ULL << i;
  return s.m.row(i) == unit && s.mt.row(i) == unit;
}

namespace detail {

// Strict "greater gain" on exact rationals num/den with den = gates added.
// A nonpositive denominator means the diagonal was solved for free (possible
// when a pair cancellation removed a preexisting gate); that always wins.
inline int gain_cmp(int64_t an, int64_t ad, int64_t bn, int64_t bd) {
  const bool ai = ad <= 0, bi = bd <= 0;
  if (ai || bi) {
    if (ai && bi) return an < bn ? -1 : an > bn ? 1 : 0;
    return ai ? 1 : -1;
  }
  const int64_t l = an * bd, r = bn * ad;
  return l < r ? -1 : l > r ? 1 : 0;
}

// Picks the best-improvement candidate; strict ">" keeps the earliest, or a
// uniform choice among ties when rng is set.
class BestGate {
 public:
  explicit BestGate(Rng* rng) : rng_(rng) {}

  void offer(CNOTGate g, int improvement) {
    if (!valid_ || improvement > best_imp_) {
      best_ = g;
      best_imp_ = improvement;
      ties_ = 1;
      valid_ = true;
    } else if (rng_ && improvement == best_imp_ &&
               rng_->below(++ties_) == 0) {
      best_ = g;
    }
  }

  bool valid() const { return valid_; }
  CNOTGate gate() const { return best_; }
  int improvement() const { return best_imp_; }

 private:
  Rng* rng_;
  CNOTGate best_{};
  int best_imp_ = 0;
  uint64_t ties_ = 0;
  bool valid_ = false;
};

}  // namespace detail

/// One Alternating Elimination step: solves row and column `diagonal` of the
/// remainder down to e_diagonal, returning early whenever the running cost
/// drops to the threshold. Four stages:
///   1. greedy sweep committing any single forward substitution whose
///      improvement meets the stage-1 minimum (default 2);
///   2. if the diagonal entry is 0, the best-improvement forward
///      substitution among rows/columns carrying a 1, with identical-pair
///      cancellation against the gate lists;
///   3. best-improvement backward eliminations clearing the column;
///   4. symmetrically for the row, with input-side gates.
/// Returns the number of gates added (may be negative after cancellation).
inline int diagonalize(SynthState& st, GateLists& gl, int threshold,
                       int diagonal, const AecmConfig& cfg = {},
                       Rng* rng = nullptr,
                       std::vector<int>* stage1_improvements = nullptr) {
  const int n = st.n();
  const int gates_before = static_cast<int>(gl.total());
  int c1 = st.cost;
  auto gates_added = [&] { return static_cast<int>(gl.total()) - gates_before; };

  // Stage 1: preprocessing sweep.
  for (int i = 0; i < n; ++i) {
    if (i == diagonal) continue;
    for (CNOTGate g : {CNOTGate{i, diagonal, Side::output},
                       CNOTGate{diagonal, i, Side::input}}) {
      const int imp = improvement_from_cnot(st, g);
      if (imp >= cfg.stage1_min_improvement) {
        (g.side == Side::output ? gl.output : gl.input).push_back(g);
        st.apply(g);
        c1 -= imp;
        if (stage1_improvements) stage1_improvements->push_back(imp);
        assert(c1 == st.cost);
        if (c1 <= threshold) return gates_added();
      }
    }
  }

  // Stage 2: forward substitution when the diagonal entry is 0.
  if (!st.m.get(diagonal, diagonal)) {
    detail::BestGate best(cfg.randomized ? rng : nullptr);
    for (int i = 0; i < n; ++i) {
      if (i == diagonal) continue;
      if (st.m.get(i, diagonal)) {
        CNOTGate g{i, diagonal, Side::output};
        best.offer(g, improvement_from_cnot(st, g));
      }
      if (st.m.get(diagonal, i)) {
        CNOTGate g{diagonal, i, Side::input};
        best.offer(g, improvement_from_cnot(st, g));
      }
    }
    assert(best.valid());  // invertible remainder always has a candidate
    const CNOTGate g = best.gate();
    cancel_redundant(g.side == Side::output ? gl.output : gl.input, g);
    st.apply(g);
    c1 -= best.improvement();
    assert(c1 == st.cost);
    if (c1 <= threshold) return gates_added();
  }

  // Stage 3: backward eliminations clearing column `diagonal`.
  for (int i = 0; i < n; ++i) {
    if (i == diagonal || !st.m.get(i, diagonal)) continue;
    detail::BestGate best(cfg.randomized ? rng : nullptr);
    best.offer({diagonal, i, Side::output},
               improvement_from_cnot(st, {diagonal, i, Side::output}));
    for (int j = i + 1; j < n; ++j) {
      if (j == diagonal || !st.m.get(j, diagonal)) continue;
      CNOTGate g{j, i, Side::output};
      best.offer(g, improvement_from_cnot(st, g));
    }
    gl.output.push_back(best.gate());
    st.apply(best.gate());
    c1 -= best.improvement();
    assert(c1 == st.cost);
    if (c1 <= threshold) return gates_added();
  }

  // Stage 4: backward eliminations clearing row `diagonal`.
  for (int i = 0; i < n; ++i) {
    if (i == diagonal || !st.m.get(diagonal, i)) continue;
    detail::BestGate best(cfg.randomized ? rng : nullptr);
    best.offer({i, diagonal, Side::input},
               improvement_from_cnot(st, {i, diagonal, Side::input}));
    for (int j = i + 1; j < n; ++j) {
      if (j == diagonal || !st.m.get(diagonal, j)) continue;
      CNOTGate g{i, j, Side::input};
      best.offer(g, improvement_from_cnot(st, g));
    }
    gl.input.push_back(best.gate());
    st.apply(best.gate());
    c1 -= best.improvement();
    assert(c1 == st.cost);
    if (c1 <= threshold) return gates_added();
  }

  assert(diagonal_solved(st, diagonal));
  return gates_added();
}

/// One outer AECM iteration: diagonalizes every unsolved diagonal on a copy
/// of the state, compares the cost drop per gate added as an exact rational,
/// and commits the winner. Returns false when every diagonal is already
/// solved (the remainder is the identity).
inline bool aecm_commit_best(SynthState& st, GateLists& gl, int threshold,
                             const AecmConfig& cfg = {}, Rng* rng = nullptr) {
  const int n = st.n();
  const int c1 = st.cost;
  bool found = false;
  SynthState best_state;
  GateLists best_gl;
  int64_t best_num = 0, best_den = 0;
  uint64_t ties = 0;
  for (int i = 0; i < n; ++i) {
    if (diagonal_solved(st, i)) continue;
    SynthState s3 = st;
    GateLists gl3 = gl;
    const int added = diagonalize(s3, gl3, threshold, i, cfg, rng);
    const int64_t num = c1 - s3.cost;
    const int64_t den = added;
    const int cmp = found ? detail::gain_cmp(num, den, best_num, best_den) : 1;
    bool take = cmp > 0;
    if (cfg.randomized && found && cmp == 0 && rng)
      take = rng->below(++ties) == 0;
    if (take) {
      if (cmp > 0) ties = 1;
      best_state = std::move(s3);
      best_gl = std::move(gl3);
      best_num = num;
      best_den = den;
      found = true;
    }
  }
  if (!found) return false;
  st = std::move(best_state);
  gl = std::move(best_gl);
  return true;
}

/// The AECM outer loop: commits best-gain diagonalizations until the cost
/// drops to the threshold. Returns the residual cost; with threshold 0 the
/// remainder reaches the identity.
inline int aecm_run(SynthState& st, GateLists& gl, int threshold,
                    const AecmConfig& cfg = {}, Rng* rng = nullptr) {
  while (st.cost > threshold) {
    if (!aecm_commit_best(st, gl, threshold, cfg, rng)) break;
  }
  return st.cost;
}

/// Complete AECM synthesis of an invertible matrix.
inline Circuit aecm_synthesize(const BitMatrix& m, const AecmConfig& cfg = {}) {
  SynthState st = SynthState::from(m);
  GateLists gl;
  Rng rng(cfg.seed);
  aecm_run(st, gl, 0, cfg, cfg.randomized ? &rng : nullptr);
  return finalize_circuit(m.size(), gl);
}

}  // namespace cnot_forge
