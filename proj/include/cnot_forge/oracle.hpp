#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "cnot_forge/bit_matrix.hpp"
#include "cnot_forge/circuit.hpp"
#include "cnot_forge/errors.hpp"

namespace cnot_forge {

inline constexpr int kMaxOracleLines = 5;
inline constexpr uint8_t kNotInvertible = 0xFF;

/// Row-major n^2-bit packing of a BitMatrix, n <= 5.
inline uint32_t encode_matrix(const BitMatrix& m) {
  const int n = m.size();
  if (n > kMaxOracleLines)
    throw DimensionError("matrix code supports up to 5 lines");
  uint32_t code = 0;
  for (int i = 0; i < n; ++i)
    code |= static_cast<uint32_t>(m.row(i)) << (i * n);
  return code;
}

inline BitMatrix decode_matrix(uint32_t code, int n) {
  BitMatrix m(n);
  const uint64_t mask = (1ULL << n) - 1;
  for (int i = 0; i < n; ++i) m.row(i) = (code >> (i * n)) & mask;
  return m;
}

/// Minimal CNOT counts for every element of GL(n, 2), n <= 5, indexed by
/// matrix code over a dense 2^(n^2) array (sentinel for non-invertible
/// codes).
struct DistanceTable {
  int n = 0;
  std::vector<uint8_t> dist;

  uint8_t distance(uint32_t code) const { return dist[code]; }

  uint64_t entries() const {
    uint64_t c = 0;
    for (uint8_t d : dist) c += d != kNotInvertible;
    return c;
  }

  std::vector<uint64_t> histogram() const {
    std::vector<uint64_t> h;
    for (uint8_t d : dist) {
      if (d == kNotInvertible) continue;
      if (h.size() <= d) h.resize(d + 1, 0);
      ++h[d];
    }
    return h;
  }
};

/// Breadth-first search from the identity over the n(n-1) row transvections.
/// Output-side generators suffice: input-side gates generate the same group
/// and cannot shorten words.
inline DistanceTable build_distance_table(int n) {
  if (n < 2 || n > kMaxOracleLines)
    throw DimensionError("distance table supports 2..5 lines");
  DistanceTable table;
  table.n = n;
  table.dist.assign(1ULL << (n * n), kNotInvertible);

  struct Generator {
    int control_shift, target_shift;
  };
  std::vector<Generator> gens;
  for (int c = 0; c < n; ++c)
    for (int t = 0; t < n; ++t)
      if (t != c) gens.push_back({c * n, t * n});
  const uint32_t row_mask = (1u << n) - 1;

  std::vector<uint32_t> frontier{encode_matrix(BitMatrix::identity(n))};
  table.dist[frontier[0]] = 0;
  uint8_t depth = 0;
  while (!frontier.empty()) {
    ++depth;
    std::vector<uint32_t> next;
    next.reserve(frontier.size() * 2);
    for (uint32_t code : frontier) {
      for (const Generator& g : gens) {
        const uint32_t row = (code >> g.control_shift) & row_mask;
        const uint32_t succ = code ^ (row << g.target_shift);
        if (table.dist[succ] == kNotInvertible) {
          table.dist[succ] = depth;
          next.push_back(succ);
        }
      }
    }
    frontier = std::move(next);
  }
  return table;
}

inline int exact_min_count(const BitMatrix& m, const DistanceTable& table) {
  if (m.size() != table.n)
    throw DimensionError("matrix dimension does not match distance table");
  const uint8_t d = table.distance(encode_matrix(m));
  if (d == kNotInvertible)
    throw SingularMatrixError("matrix is singular over GF(2)");
  return d;
}

/// Greedy descent through the table: repeatedly applies any transvection
/// that reduces the distance by one, yielding a minimal-length circuit.
inline Circuit exact_min_circuit(const BitMatrix& m,
                                 const DistanceTable& table) {
  const int n = table.n;
  int d = exact_min_count(m, table);
  uint32_t code = encode_matrix(m);
  const uint32_t row_mask = (1u << n) - 1;
  std::vector<CNOTGate> applied;
  while (d > 0) {
    bool stepped = false;
    for (int c = 0; c < n && !stepped; ++c) {
      for (int t = 0; t < n && !stepped; ++t) {
        if (t == c) continue;
        const uint32_t row = (code >> (c * n)) & row_mask;
        const uint32_t succ = code ^ (row << (t * n));
        if (table.dist[succ] == d - 1) {
          applied.push_back({c, t, Side::output});
          code = succ;
          --d;
          stepped = true;
        }
      }
    }
    if (!stepped)
      throw std::logic_error("distance table has no descending neighbor");
  }
  Circuit out;
  out.n = n;
  out.gates.assign(applied.rbegin(), applied.rend());
  return out;
}

inline constexpr char kTableMagic[4] = {'C', 'F', 'D', 'T'};

inline void save_distance_table(const DistanceTable& table,
                                const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(kTableMagic, 4);
  const uint32_t n = static_cast<uint32_t>(table.n), width = 1;
  out.write(reinterpret_cast<const char*>(&n), 4);
  out.write(reinterpret_cast<const char*>(&width), 4);
  out.write(reinterpret_cast<const char*>(table.dist.data()),
            static_cast<std::streamsize>(table.dist.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline DistanceTable load_distance_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  char magic[4];
  uint32_t n = 0, width = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&n), 4);
  in.read(reinterpret_cast<char*>(&width), 4);
  if (!in || std::memcmp(magic, kTableMagic, 4) != 0 || width != 1 || n < 2 ||
      n > kMaxOracleLines)
    throw ParseError("not a distance table file: " + path);
  DistanceTable table;
  table.n = static_cast<int>(n);
  table.dist.resize(1ULL << (n * n));
  in.read(reinterpret_cast<char*>(table.dist.data()),
          static_cast<std::streamsize>(table.dist.size()));
  if (!in) throw ParseError("truncated distance table file: " + path);
  return table;
}

namespace detail {

// Tables for sub-5-line peephole windows, built once on demand.
inline const DistanceTable& cached_table(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<DistanceTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<DistanceTable>(build_distance_table(n));
  return *slot;
}

}  // namespace detail

/// Sliding-window postprocessing: collects maximal consecutive gate runs
/// touching at most five distinct lines, resynthesizes each run's
/// sub-matrix through the exact table, and keeps the replacement only when
/// it is strictly shorter. Never lengthens the circuit.
inline Circuit peephole_optimize(const Circuit& c, const DistanceTable& t5) {
  Circuit out;
  out.n = c.n;
  out.permutation = c.permutation;
  const size_t total = c.gates.size();
  size_t i = 0;
  while (i < total) {
    std::set<int> lines;
    size_t j = i;
    while (j < total) {
      std::set<int> extended = lines;
      extended.insert(c.gates[j].control);
      extended.insert(c.gates[j].target);
      if (static_cast<int>(extended.size()) > kMaxOracleLines) break;
      lines = std::move(extended);
      ++j;
    }
    // Map the run onto local lines 0..k-1 and replay it.
    std::vector<int> line_of(lines.begin(), lines.end());
    std::map<int, int> local;
    for (size_t k = 0; k < line_of.size(); ++k)
      local[line_of[k]] = static_cast<int>(k);
    Circuit run;
    run.n = static_cast<int>(line_of.size());
    for (size_t g = i; g < j; ++g)
      run.gates.push_back({local[c.gates[g].control],
                           local[c.gates[g].target], Side::output});
    const DistanceTable& table =
        run.n == t5.n ? t5 : detail::cached_table(run.n);
    const Circuit replacement = exact_min_circuit(circuit_to_matrix(run), table);
    if (replacement.gates.size() < run.gates.size()) {
      for (const CNOTGate& g : replacement.gates)
        out.gates.push_back(
            {line_of[g.control], line_of[g.target], Side::output});
    } else {
      out.gates.insert(out.gates.end(), c.gates.begin() + i,
                       c.gates.begin() + j);
    }
    i = j;
  }
  return out;
}

}  // namespace cnot_forge
