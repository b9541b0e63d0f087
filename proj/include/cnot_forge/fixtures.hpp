#pragma once

#include <string_view>

#include "cnot_forge/bit_matrix.hpp"

namespace cnot_forge::fixtures {

/// 5x5 function on which plain MCG hits a local minimum on the first
/// iteration and needs the elimination fallback.
inline constexpr std::string_view kHard5x5 =
    "5\n"
    "10011\n"
    "01101\n"
    "01110\n"
    "10110\n"
    "11001\n";

inline constexpr std::string_view kHard5x5Inverse =
    "5\n"
    "11100\n"
    "11010\n"
    "10101\n"
    "01011\n"
    "00111\n";

/// Remainder pair left after the fallback diagonalizes the first line of
/// kHard5x5 (cost 16).
inline constexpr std::string_view kHard5x5Remainder =
    "5\n"
    "10000\n"
    "01101\n"
    "01110\n"
    "00101\n"
    "01010\n";

inline constexpr std::string_view kHard5x5RemainderInverse =
    "5\n"
    "10000\n"
    "01010\n"
    "00101\n"
    "01011\n"
    "00111\n";

/// 6x6 comparison function used across all synthesis methods.
inline constexpr std::string_view kBench6x6 =
    "6\n"
    "110000\n"
    "100110\n"
    "010010\n"
    "111111\n"
    "110111\n"
    "001110\n";

/// Row permutation of kBench6x6 reached by the line-reordering synthesis.
inline constexpr std::string_view kBench6x6Reordered =
    "6\n"
    "100110\n"
    "110000\n"
    "111111\n"
    "001110\n"
    "010010\n"
    "110111\n";

/// 4x4 prefix-sum function y_i = x_1 xor ... xor x_{i+1}; exact minimum is
/// three gates, which plain elimination overshoots.
inline constexpr std::string_view kPrefixSum4x4 =
    "4\n"
    "1000\n"
    "1100\n"
    "1110\n"
    "1111\n";

/// 16x16 test function for the probabilistic multi-pass statistics.
inline constexpr std::string_view kBench16x16 =
    "16\n"
    "1111100011101011\n"
    "0110110101111010\n"
    "1110000010101010\n"
    "0010110001111101\n"
    "1011000010100010\n"
    "0100010101011111\n"
    "0110010111000101\n"
    "1110010010010111\n"
    "0101100100101000\n"
    "1101100100010000\n"
    "0010000001011000\n"
    "1111110110000001\n"
    "0100100101010010\n"
    "0000001011010001\n"
    "1100010101111110\n"
    "1010010010101100\n";

inline BitMatrix hard5x5() { return BitMatrix::parse(std::string(kHard5x5)); }
inline BitMatrix hard5x5_inverse() {
  return BitMatrix::parse(std::string(kHard5x5Inverse));
}
inline BitMatrix hard5x5_remainder() {
  return BitMatrix::parse(std::string(kHard5x5Remainder));
}
inline BitMatrix hard5x5_remainder_inverse() {
  return BitMatrix::parse(std::string(kHard5x5RemainderInverse));
}
inline BitMatrix bench6x6() {
  return BitMatrix::parse(std::string(kBench6x6));
}
inline BitMatrix bench6x6_reordered() {
  return BitMatrix::parse(std::string(kBench6x6Reordered));
}
inline BitMatrix prefix_sum4x4() {
  return BitMatrix::parse(std::string(kPrefixSum4x4));
}
inline BitMatrix bench16x16() {
  return BitMatrix::parse(std::string(kBench16x16));
}

}  // namespace cnot_forge::fixtures
