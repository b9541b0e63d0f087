#pragma once

#include <cmath>
#include <unordered_map>
#include <vector>

#include "cnot_forge/bit_matrix.hpp"
#include "cnot_forge/circuit.hpp"
#include "cnot_forge/gate.hpp"

namespace cnot_forge {

namespace detail {

// Row operations recorded while reducing `w` to the identity multiply on the
// left, so the circuit realizing the original matrix is the record reversed.
inline Circuit ops_to_circuit(int n, const std::vector<CNOTGate>& ops) {
  Circuit c;
  c.n = n;
  c.gates.assign(ops.rbegin(), ops.rend());
  return c;
}

}  // namespace detail

/// Plain GF(2) Gaussian elimination: forward substitution to lower-triangular
/// form, then backward elimination of the above-diagonal entries. O(n^2)
/// gates.
inline Circuit gaussian_synthesis(const BitMatrix& m) {
  BitMatrix w = m;
  const int n = w.size();
  std::vector<CNOTGate> ops;
  for (int col = 0; col < n; ++col) {
    if (!w.get(col, col)) {
      int pivot = -1;
      for (int r = col + 1; r < n; ++r)
        if (w.get(r, col)) {
          pivot = r;
          break;
        }
      if (pivot < 0)
        throw SingularMatrixError("no pivot for column " + std::to_string(col));
      w.xor_row(col, pivot);
      ops.push_back({pivot, col, Side::output});
    }
    for (int r = col + 1; r < n; ++r)
      if (w.get(r, col)) {
        w.xor_row(r, col);
        ops.push_back({col, r, Side::output});
      }
  }
  for (int col = n - 1; col >= 0; --col)
    for (int r = 0; r < col; ++r)
      if (w.get(r, col)) {
        w.xor_row(r, col);
        ops.push_back({col, r, Side::output});
      }
  return detail::ops_to_circuit(n, ops);
}

/// Recommended section width for the multi-column baseline.
inline int default_section_size(int n) {
  return std::max(1, static_cast<int>(std::llround(std::log2(n) / 2.0)));
}

namespace detail {

// Reduces w to upper-triangular form, processing columns in sections and
// eliminating duplicate sub-rows within each section before the per-column
// elimination.
inline void multi_column_lower(BitMatrix& w, int section_size,
                               std::vector<CNOTGate>& ops) {
  const int n = w.size();
  for (int lo = 0; lo < n; lo += section_size) {
    const int hi = std::min(n, lo + section_size);
    // Duplicate sub-rows only exist meaningfully for sections wider than
    // one column; at width 1 the step would merely reroute the per-column
    // elimination below through an arbitrary row.
    if (hi - lo > 1) {
      uint64_t mask = 0;
      for (int j = lo; j < hi; ++j) mask |= 1ULL << j;
      std::unordered_map<uint64_t, int> pattern_row;
      for (int r = lo; r < n; ++r) {
        const uint64_t sub = w.row(r) & mask;
        if (!sub) continue;
        auto [it, fresh] = pattern_row.try_emplace(sub, r);
        if (!fresh) {
          w.xor_row(r, it->second);
          ops.push_back({it->second, r, Side::output});
        }
      }
    }
    for (int col = lo; col < hi; ++col) {
      if (!w.get(col, col)) {
        int pivot = -1;
        for (int r = col + 1; r < n; ++r)
          if (w.get(r, col)) {
            pivot = r;
            break;
          }
        if (pivot < 0)
          throw SingularMatrixError("no pivot for column " +
                                    std::to_string(col));
        w.xor_row(col, pivot);
        ops.push_back({pivot, col, Side::output});
      }
      for (int r = col + 1; r < n; ++r)
        if (w.get(r, col)) {
          w.xor_row(r, col);
          ops.push_back({col, r, Side::output});
        }
    }
  }
}

}  // namespace detail

/// Multi-column elimination baseline: a lower pass in column sections, then
/// the same pass on the transpose; O(n^2 / log n) gates at the recommended
/// section width. section_size <= 0 selects the default.
inline Circuit algorithm1_synthesis(const BitMatrix& m, int section_size = 0) {
  const int n = m.size();
  if (section_size <= 0) section_size = default_section_size(n);
  section_size = std::min(section_size, n);

  BitMatrix w = m;
  std::vector<CNOTGate> lower_ops;
  detail::multi_column_lower(w, section_size, lower_ops);
  w = w.transposed();
  std::vector<CNOTGate> upper_ops;
  detail::multi_column_lower(w, section_size, upper_ops);

  // m = L1...Lk * T1'...Tl' with T' the transposed (line-swapped) upper ops;
  // replay order is right to left.
  Circuit c;
  c.n = n;
  c.gates.reserve(lower_ops.size() + upper_ops.size());
  for (const CNOTGate& g : upper_ops)
    c.gates.push_back({g.target, g.control, Side::output});
  for (auto it = lower_ops.rbegin(); it != lower_ops.rend(); ++it)
    c.gates.push_back(*it);
  return c;
}

}  // namespace cnot_forge
