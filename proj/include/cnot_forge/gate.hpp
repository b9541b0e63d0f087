#pragma once

#include <cstdint>
#include <vector>

#include "cnot_forge/errors.hpp"

namespace cnot_forge {

/// Which end of the circuit a gate is synthesized from. Output-side gates
/// are row operations on the remainder matrix, input-side gates are column
/// operations.
enum class Side : uint8_t { output, input };

struct CNOTGate {
  int control = 0;
  int target = 0;
  Side side = Side::output;

  bool operator==(const CNOTGate&) const = default;

  bool touches(int line) const { return control == line || target == line; }
};

/// All 2*n*(n-1) elementary gates in the fixed enumeration order:
/// output side first, then input side; control ascending; target ascending
/// skipping the control.
inline std::vector<CNOTGate> enumerate_gates(int n) {
  std::vector<CNOTGate> gates;
  gates.reserve(static_cast<size_t>(2 * n * (n - 1)));
  for (Side side : {Side::output, Side::input})
    for (int c = 0; c < n; ++c)
      for (int t = 0; t < n; ++t)
        if (t != c) gates.push_back({c, t, side});
  return gates;
}

/// Appends g to the list unless the most recent gate touching either of g's
/// lines equals g, in which case that gate is removed instead (CNOT gates are
/// self-inverse and gates on disjoint lines commute). Returns whether the
/// pair was cancelled.
inline bool cancel_redundant(std::vector<CNOTGate>& gates, CNOTGate g) {
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    if (*it == g) {
      gates.erase(std::next(it).base());
      return true;
    }
    if (it->touches(g.control) || it->touches(g.target)) break;
  }
  gates.push_back(g);
  return false;
}

}  // namespace cnot_forge
