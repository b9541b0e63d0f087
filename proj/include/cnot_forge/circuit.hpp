#pragma once

#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cnot_forge/bit_matrix.hpp"
#include "cnot_forge/gate.hpp"

namespace cnot_forge {

/// A finalized circuit: gates in input->output application order (each one a
/// row operation when replayed), plus an optional output-line permutation.
/// With a permutation p, replaying the gates on I produces row p[i] of the
/// specified matrix on line i; without one the replay is the matrix itself.
struct Circuit {
  int n = 0;
  std::vector<CNOTGate> gates;
  std::vector<int> permutation;  // empty means identity

  bool has_permutation() const {
    if (permutation.empty()) return false;
    for (int i = 0; i < n; ++i)
      if (permutation[i] != i) return true;
    return false;
  }

  size_t gate_count() const { return gates.size(); }
};

/// Replays the gate list on the identity and applies the permutation; the
/// universal verifier for every synthesis method in this library.
inline BitMatrix circuit_to_matrix(const Circuit& c) {
  BitMatrix g = BitMatrix::identity(c.n);
  for (const CNOTGate& gate : c.gates) g.xor_row(gate.target, gate.control);
  if (c.permutation.empty()) return g;
  if (static_cast<int>(c.permutation.size()) != c.n)
    throw DimensionError("permutation length does not match line count");
  BitMatrix out(c.n);
  for (int i = 0; i < c.n; ++i) out.row(c.permutation[i]) = g.row(i);
  return out;
}

inline bool verify_circuit(const Circuit& c, const BitMatrix& spec) {
  return c.n == spec.size() && circuit_to_matrix(c) == spec;
}

/// Circuit text format: optional first line "perm p0 p1 ... p{n-1}"
/// (0-based), then one "cnot <control> <target>" line per gate in
/// input->output application order.
inline std::string circuit_to_text(const Circuit& c) {
  std::string out;
  if (c.has_permutation()) {
    out += "perm";
    for (int p : c.permutation) out += " " + std::to_string(p);
    out.push_back('\n');
  }
  for (const CNOTGate& g : c.gates)
    out += "cnot " + std::to_string(g.control) + " " +
           std::to_string(g.target) + "\n";
  return out;
}

inline Circuit parse_circuit(std::istream& in, int n) {
  Circuit c;
  c.n = n;
  std::string line;
  bool first = true;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;  // blank line
    if (word == "perm") {
      if (!first) throw ParseError("perm header must be the first line");
      c.permutation.resize(n);
      std::vector<bool> seen(n, false);
      for (int i = 0; i < n; ++i) {
        int p;
        if (!(ls >> p) || p < 0 || p >= n || seen[p])
          throw ParseError("bad permutation entry on line " +
                           std::to_string(lineno));
        seen[p] = true;
        c.permutation[i] = p;
      }
    } else if (word == "cnot") {
      int ctrl, tgt;
      if (!(ls >> ctrl >> tgt) || ctrl < 0 || tgt < 0 || ctrl >= n ||
          tgt >= n || ctrl == tgt)
        throw ParseError("bad gate on line " + std::to_string(lineno));
      c.gates.push_back({ctrl, tgt, Side::output});
    } else {
      throw ParseError("unrecognized directive '" + word + "' on line " +
                       std::to_string(lineno));
    }
    std::string rest;
    if (ls >> rest)
      throw ParseError("trailing tokens on line " + std::to_string(lineno));
    first = false;
  }
  return c;
}

inline Circuit parse_circuit(const std::string& text, int n) {
  std::istringstream in(text);
  return parse_circuit(in, n);
}

}  // namespace cnot_forge
