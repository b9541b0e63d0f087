#pragma once

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cnot_forge/errors.hpp"
#include "cnot_forge/rng.hpp"

namespace cnot_forge {

inline constexpr int kMaxLines = 64;

/// Square GF(2) matrix with one 64-bit word per row. Entry (i, j) is the
/// coefficient of input x_j in output y_i of the linear function y = Mx.
class BitMatrix {
 public:
  BitMatrix() = default;

  explicit BitMatrix(int n) : n_(n), rows_(static_cast<size_t>(n), 0) {
    if (n < 1 || n > kMaxLines)
      throw DimensionError("matrix dimension out of range: " +
                           std::to_string(n));
  }

  static BitMatrix identity(int n) {
    BitMatrix m(n);
    for (int i = 0; i < n; ++i) m.rows_[i] = 1ULL << i;
    return m;
  }

  int size() const { return n_; }

  bool get(int i, int j) const { return (rows_[i] >> j) & 1; }

  void set(int i, int j, bool v) {
    if (v)
      rows_[i] |= 1ULL << j;
    else
      rows_[i] &= ~(1ULL << j);
  }

  uint64_t row(int i) const { return rows_[i]; }
  uint64_t& row(int i) { return rows_[i]; }

  uint64_t row_mask() const {
    return n_ == 64 ? ~0ULL : (1ULL << n_) - 1;
  }

  /// row[target] ^= row[source]
  void xor_row(int target, int source) { rows_[target] ^= rows_[source]; }

  /// column[target] ^= column[source]
  void xor_col(int target, int source) {
    for (int i = 0; i < n_; ++i)
      rows_[i] ^= ((rows_[i] >> source) & 1) << target;
  }

  void swap_rows(int i, int j) { std::swap(rows_[i], rows_[j]); }

  bool is_identity() const {
    for (int i = 0; i < n_; ++i)
      if (rows_[i] != (1ULL << i)) return false;
    return true;
  }

  /// Exactly one 1 per row and per column.
  bool is_permutation() const {
    uint64_t seen = 0;
    for (int i = 0; i < n_; ++i) {
      if (std::popcount(rows_[i]) != 1) return false;
      seen |= rows_[i];
    }
    return seen == row_mask();
  }

  int total_ones() const {
    int c = 0;
    for (int i = 0; i < n_; ++i) c += std::popcount(rows_[i]);
    return c;
  }

  BitMatrix transposed() const {
    BitMatrix t(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (get(i, j)) t.set(j, i, true);
    return t;
  }

  BitMatrix multiplied(const BitMatrix& other) const {
    if (other.n_ != n_) throw DimensionError("dimension mismatch in product");
    BitMatrix out(n_);
    for (int i = 0; i < n_; ++i) {
      uint64_t acc = 0;
      uint64_t bits = rows_[i];
      while (bits) {
        int j = std::countr_zero(bits);
        bits &= bits - 1;
        acc ^= other.rows_[j];
      }
      out.rows_[i] = acc;
    }
    return out;
  }

  bool invertible() const {
    std::vector<uint64_t> work(rows_);
    for (int col = 0; col < n_; ++col) {
      int pivot = -1;
      for (int r = col; r < n_; ++r)
        if ((work[r] >> col) & 1) {
          pivot = r;
          break;
        }
      if (pivot < 0) return false;
      std::swap(work[col], work[pivot]);
      for (int r = col + 1; r < n_; ++r)
        if ((work[r] >> col) & 1) work[r] ^= work[col];
    }
    return true;
  }

  /// Gauss-Jordan inverse over GF(2). Throws SingularMatrixError.
  BitMatrix inverted() const {
    std::vector<uint64_t> work(rows_);
    BitMatrix inv = identity(n_);
    for (int col = 0; col < n_; ++col) {
      int pivot = -1;
      for (int r = col; r < n_; ++r)
        if ((work[r] >> col) & 1) {
          pivot = r;
          break;
        }
      if (pivot < 0)
        throw SingularMatrixError("matrix is singular over GF(2)");
      std::swap(work[col], work[pivot]);
      inv.swap_rows(col, pivot);
      for (int r = 0; r < n_; ++r) {
        if (r != col && ((work[r] >> col) & 1)) {
          work[r] ^= work[col];
          inv.xor_row(r, col);
        }
      }
    }
    return inv;
  }

  bool operator==(const BitMatrix& other) const = default;

  /// Text format: first line n, then n lines of n characters from {0,1};
  /// row i lists the coefficients of output y_i. Trailing whitespace ignored.
  static BitMatrix parse(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty matrix input");
    int n = 0;
    try {
      size_t pos = 0;
      n = std::stoi(line, &pos);
      while (pos < line.size()) {
        if (!std::isspace(static_cast<unsigned char>(line[pos])))
          throw ParseError("trailing characters after dimension");
        ++pos;
      }
    } catch (const std::invalid_argument&) {
      throw ParseError("bad dimension line: " + line);
    } catch (const std::out_of_range&) {
      throw ParseError("bad dimension line: " + line);
    }
    if (n < 1 || n > kMaxLines)
      throw ParseError("dimension out of range: " + std::to_string(n));
    BitMatrix m(n);
    for (int i = 0; i < n; ++i) {
      if (!std::getline(in, line))
        throw ParseError("expected " + std::to_string(n) + " rows, got " +
                         std::to_string(i));
      while (!line.empty() &&
             std::isspace(static_cast<unsigned char>(line.back())))
        line.pop_back();
      if (static_cast<int>(line.size()) != n)
        throw ParseError("row " + std::to_string(i) + " has " +
                         std::to_string(line.size()) + " entries, expected " +
                         std::to_string(n));
      for (int j = 0; j < n; ++j) {
        if (line[j] == '1')
          m.set(i, j, true);
        else if (line[j] != '0')
          throw ParseError(std::string("bad character '") + line[j] +
                           "' in row " + std::to_string(i));
      }
    }
    return m;
  }

  static BitMatrix parse(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
  }

  std::string to_text() const {
    std::string out = std::to_string(n_);
    out.push_back('\n');
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) out.push_back(get(i, j) ? '1' : '0');
      out.push_back('\n');
    }
    return out;
  }

 private:
  int n_ = 0;
  std::vector<uint64_t> rows_;
};

inline std::ostream& operator<<(std::ostream& os, const BitMatrix& m) {
  return os << m.to_text();
}

/// Random element of GL(n, 2): 2n^2 operations on the identity, each a
/// uniformly chosen row-add (CNOT) or row-exchange (SWAP) on a uniformly
/// random ordered pair of distinct lines. Deterministic for a fixed seed.
inline BitMatrix random_invertible(int n, uint64_t seed) {
  BitMatrix m = BitMatrix::identity(n);
  if (n < 2) return m;
  Rng rng(seed);
  const int ops = 2 * n * n;
  for (int k = 0; k < ops; ++k) {
    bool swap = rng.coin();
    int a = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
    int b = static_cast<int>(rng.below(static_cast<uint64_t>(n - 1)));
    if (b >= a) ++b;
    if (swap)
      m.swap_rows(a, b);
    else
      m.xor_row(b, a);  // row b ^= row a
  }
  return m;
}

}  // namespace cnot_forge
