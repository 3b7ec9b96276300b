#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace lcmi {

// A binary linear code C in F2^n together with an affine shift u, modelling
// the channel input X^n ~ Uniform(C + u). Coordinates are packed LSB-first
// into a single 64-bit word (coordinate i = bit i), which caps the block
// length at 64; the exact engines cap it much lower anyway.
//
// The generator is normalized to reduced row echelon form on construction,
// so dimension(), equality and rank queries are canonical. The shift is kept
// verbatim: conditioning arguments genuinely produce u != 0 and the engines
// must accept it.
class BinaryLinearCode {
 public:
  static constexpr int kMaxLength = 64;

  BinaryLinearCode(int n, std::vector<std::uint64_t> generator_rows, std::uint64_t shift = 0);

  int length() const { return n_; }
  int dimension() const { return static_cast<int>(rows_.size()); }
  double rate() const { return n_ > 0 ? static_cast<double>(dimension()) / n_ : 0.0; }
  std::uint64_t shift() const { return shift_; }

  // Reduced row echelon basis, sorted by pivot column.
  const std::vector<std::uint64_t>& rows() const { return rows_; }

  // XOR of the basis rows selected by the low dimension() bits of message.
  std::uint64_t codeword(std::uint64_t message) const;

  // Bitmask covering coordinates 0..n-1.
  std::uint64_t word_mask() const;

  bool operator==(const BinaryLinearCode&) const = default;

 private:
  int n_;
  std::vector<std::uint64_t> rows_;
  std::uint64_t shift_;
};

// GF(2) rank of a set of packed rows.
int gf2_rank(std::vector<std::uint64_t> rows);

// Projection of C+u onto the kept coordinates (0-based), re-indexed to
// 0..|keep|-1 in ascending coordinate order. Duplicates are ignored.
BinaryLinearCode puncture(const BinaryLinearCode& code, std::span<const int> keep);

// counts[w] = #{c in C : weight(y ^ u ^ c) = w}. Every y whose offset y^u
// lands in the same coset of C shares this enumerator, which is what makes
// the exact BSC output-entropy sweep feasible.
struct CosetWeightEnumerator {
  std::vector<std::uint64_t> counts;  // indices 0..n
  std::uint64_t coset_size;           // 2^k
};
CosetWeightEnumerator coset_weight_enumerator(const BinaryLinearCode& code, std::uint64_t y);

BinaryLinearCode repetition(int n);
BinaryLinearCode single_parity_check(int n);  // n >= 2, all even-weight words
BinaryLinearCode hamming_7_4();
BinaryLinearCode reed_muller_1(int m);        // RM(1,m): [2^m, m+1]
BinaryLinearCode full_space(int n);           // k = n

// k rows drawn from a counter-based PRNG until they span rank k; identical
// (n, k, seed) always yields the identical code.
BinaryLinearCode random_code(int n, int k, std::uint64_t seed);

// Text format: first line "n k", then k generator rows as 0/1 strings of
// length n (leftmost character = coordinate 0), then an optional trailing
// line "shift <0/1 string>".
BinaryLinearCode parse_code_file(std::istream& in);
std::string format_code_file(const BinaryLinearCode& code);

}  // namespace lcmi
