#pragma once

#include <bit>
#include <cassert>
#include <cstdint>

#include "cnot_forge/bit_matrix.hpp"
#include "cnot_forge/gate.hpp"

namespace cnot_forge {

/// Eq.-style main cost: entries of m differing from I plus entries of mi
/// differing from I.
inline int cost_eq1(const BitMatrix& m, const BitMatrix& mi) {
  int c = 0;
  for (int i = 0; i < m.size(); ++i) {
    c += std::popcount(m.row(i) ^ (1ULL << i));
    c += std::popcount(mi.row(i) ^ (1ULL << i));
  }
  return c;
}

/// Sparseness cost: total ones of m and mi minus 2n. Zero exactly when m is
/// a permutation matrix.
inline int cost_eq2(const BitMatrix& m, const BitMatrix& mi) {
  return m.total_ones() + mi.total_ones() - 2 * m.size();
}

/// Live synthesis state: the remainder matrix, its incrementally maintained
/// inverse, and both transposes. The transposes turn column reads into row
/// reads so cost deltas are a handful of popcounts. Cheap to copy, so search
/// procedures evaluate candidates on independent copies.
struct SynthState {
  BitMatrix m, mi, mt, mit;
  int cost = 0;   // main cost of (m, mi)
  int ones = 0;   // total ones of m plus mi

  static SynthState from(const BitMatrix& matrix) {
    return from_pair(matrix, matrix.inverted());
  }

  static SynthState from_pair(const BitMatrix& matrix, const BitMatrix& inv) {
    SynthState s;
    s.m = matrix;
    s.mi = inv;
    s.mt = matrix.transposed();
    s.mit = inv.transposed();
    s.cost = cost_eq1(s.m, s.mi);
    s.ones = s.m.total_ones() + s.mi.total_ones();
    return s;
  }

  int n() const { return m.size(); }

  int sparseness_cost() const { return ones - 2 * n(); }

  /// Applies one CNOT. Output side: row(target) of m ^= row(control),
  /// column(control) of mi ^= column(target). Input side: column(control) of
  /// m ^= column(target), row(target) of mi ^= row(control). Both cost
  /// counters are updated from the two affected vectors only.
  void apply(CNOTGate g) {
    assert(g.control != g.target);
    assert(g.control >= 0 && g.target >= 0 && g.control < n() &&
           g.target < n());
    if (g.side == Side::output) {
      update_row(m, mt, g.target, g.control);
      update_row(mit, mi, g.control, g.target);
    } else {
      update_row(mt, m, g.control, g.target);
      update_row(mi, mit, g.target, g.control);
    }
  }

 private:
  // XORs row `src` into row `dst` of `primary`, mirrors the change into the
  // matching column of `twin`, and adjusts both cost counters.
  void update_row(BitMatrix& primary, BitMatrix& twin, int dst, int src) {
    const uint64_t before = primary.row(dst);
    const uint64_t after = before ^ primary.row(src);
    const uint64_t unit = 1ULL << dst;
    cost += std::popcount(after ^ unit) - std::popcount(before ^ unit);
    ones += std::popcount(after) - std::popcount(before);
    primary.row(dst) = after;
    twin.xor_col(dst, src);
  }
};

/// cost_eq1(before) - cost_eq1(after applying g), without mutating the
/// state; looks only at the one affected row of each matrix pair.
inline int improvement_from_cnot(const SynthState& s, CNOTGate g) {
  auto delta = [](const BitMatrix& mat, int dst, int src) {
    const uint64_t unit = 1ULL << dst;
    return std::popcount(mat.row(dst) ^ unit) -
           std::popcount(mat.row(dst) ^ mat.row(src) ^ unit);
  };
  if (g.side == Side::output)
    return delta(s.m, g.target, g.control) + delta(s.mit, g.control, g.target);
  return delta(s.mt, g.control, g.target) + delta(s.mi, g.target, g.control);
}

/// Same delta for the sparseness cost.
inline int sparseness_improvement(const SynthState& s, CNOTGate g) {
  auto delta = [](const BitMatrix& mat, int dst, int src) {
    return std::popcount(mat.row(dst)) -
           std::popcount(mat.row(dst) ^ mat.row(src));
  };
  if (g.side == Side::output)
    return delta(s.m, g.target, g.control) + delta(s.mit, g.control, g.target);
  return delta(s.mt, g.control, g.target) + delta(s.mi, g.target, g.control);
}

}  // namespace cnot_forge
