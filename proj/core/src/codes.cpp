#include "lcmi/codes.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "lcmi/rng.hpp"

namespace lcmi {
namespace {

std::uint64_t mask_for(int n) {
  return n >= 64 ? ~0ull : (1ull << n) - 1;
}

void check_length(int n) {
  if (n < 1 || n > BinaryLinearCode::kMaxLength)
    throw std::invalid_argument("block length must lie in [1," +
                                std::to_string(BinaryLinearCode::kMaxLength) + "], got " +
                                std::to_string(n));
}

// Reduced row echelon form over GF(2); rows come out sorted by pivot column
// (pivot = lowest set bit, since coordinate 0 is the LSB).
std::vector<std::uint64_t> rref(std::vector<std::uint64_t> rows) {
  std::vector<std::uint64_t> basis;
  for (std::uint64_t row : rows) {
    for (std::uint64_t b : basis)
      if (row >> std::countr_zero(b) & 1ull) row ^= b;
    if (!row) continue;
    const int piv = std::countr_zero(row);
    for (std::uint64_t& b : basis)
      if (b >> piv & 1ull) b ^= row;
    basis.push_back(row);
  }
  std::sort(basis.begin(), basis.end(), [](std::uint64_t a, std::uint64_t b) {
    return std::countr_zero(a) < std::countr_zero(b);
  });
  return basis;
}

}  // namespace

BinaryLinearCode::BinaryLinearCode(int n, std::vector<std::uint64_t> generator_rows,
                                   std::uint64_t shift)
    : n_(n), shift_(shift) {
  check_length(n);
  const std::uint64_t mask = mask_for(n);
  for (std::uint64_t r : generator_rows)
    if (r & ~mask)
      throw std::invalid_argument("generator row has bits beyond the block length");
  if (shift & ~mask)
    throw std::invalid_argument("shift has bits beyond the block length");
  rows_ = rref(std::move(generator_rows));
}

std::uint64_t BinaryLinearCode::codeword(std::uint64_t message) const {
  std::uint64_t w = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (message >> i & 1ull) w ^= rows_[i];
  return w;
}

std::uint64_t BinaryLinearCode::word_mask() const { return mask_for(n_); }

int gf2_rank(std::vector<std::uint64_t> rows) {
  return static_cast<int>(rref(std::move(rows)).size());
}

BinaryLinearCode puncture(const BinaryLinearCode& code, std::span<const int> keep) {
  std::vector<int> cols(keep.begin(), keep.end());
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  for (int c : cols)
    if (c < 0 || c >= code.length())
      throw std::invalid_argument("puncture: coordinate " + std::to_string(c) + " out of range");
  if (cols.empty()) throw std::invalid_argument("puncture: kept set must be nonempty");

  auto compress = [&cols](std::uint64_t w) {
    std::uint64_t out = 0;
    for (std::size_t j = 0; j < cols.size(); ++j) out |= (w >> cols[j] & 1ull) << j;
    return out;
  };
  std::vector<std::uint64_t> rows;
  rows.reserve(code.rows().size());
  for (std::uint64_t r : code.rows()) rows.push_back(compress(r));
  return BinaryLinearCode(static_cast<int>(cols.size()), std::move(rows), compress(code.shift()));
}

CosetWeightEnumerator coset_weight_enumerator(const BinaryLinearCode& code, std::uint64_t y) {
  if (y & ~code.word_mask())
    throw std::invalid_argument("coset_weight_enumerator: y has bits beyond the block length");
  const int k = code.dimension();
  if (k > 30)
    throw std::invalid_argument("coset_weight_enumerator: 2^k enumeration limited to k <= 30");
  CosetWeightEnumerator e{std::vector<std::uint64_t>(code.length() + 1, 0), 1ull << k};
  std::uint64_t w = y ^ code.shift();
  ++e.counts[std::popcount(w)];
  for (std::uint64_t m = 1; m < e.coset_size; ++m) {
    w ^= code.rows()[std::countr_zero(m)];  // Gray-code walk over the coset
    ++e.counts[std::popcount(w)];
  }
  return e;
}

BinaryLinearCode repetition(int n) {
  check_length(n);
  return BinaryLinearCode(n, {mask_for(n)});
}

BinaryLinearCode single_parity_check(int n) {
  check_length(n);
  if (n < 2) throw std::invalid_argument("single_parity_check needs n >= 2");
  std::vector<std::uint64_t> rows;
  for (int i = 0; i + 1 < n; ++i) rows.push_back(1ull << i | 1ull << (n - 1));
  return BinaryLinearCode(n, std::move(rows));
}

BinaryLinearCode hamming_7_4() {
  // Systematic [7,4] generator: identity plus parity columns 4..6.
  return BinaryLinearCode(7, {
                                 0b0110001,  // 1000110
                                 0b1010010,  // 0100101
                                 0b1100100,  // 0010011
                                 0b1111000,  // 0001111
                             });
}

BinaryLinearCode reed_muller_1(int m) {
  if (m < 0 || m > 6) throw std::invalid_argument("reed_muller_1: m must lie in [0,6]");
  const int n = 1 << m;
  std::vector<std::uint64_t> rows{mask_for(n)};
  for (int i = 0; i < m; ++i) {
    std::uint64_t row = 0;
    for (int x = 0; x < n; ++x)
      if (x >> i & 1) row |= 1ull << x;
    rows.push_back(row);
  }
  return BinaryLinearCode(n, std::move(rows));
}

BinaryLinearCode full_space(int n) {
  check_length(n);
  std::vector<std::uint64_t> rows;
  for (int i = 0; i < n; ++i) rows.push_back(1ull << i);
  return BinaryLinearCode(n, std::move(rows));
}

BinaryLinearCode random_code(int n, int k, std::uint64_t seed) {
  check_length(n);
  if (k < 0 || k > n)
    throw std::invalid_argument("random_code: k must lie in [0,n]");
  CounterRng rng(seed);
  std::vector<std::uint64_t> rows;
  std::vector<std::uint64_t> slot(64, 0);
  int guard = 0;
  while (static_cast<int>(rows.size()) < k) {
    if (++guard > 64 * (k + 16))
      throw std::runtime_error("random_code: failed to reach full rank");
    std::uint64_t v = rng.next() & mask_for(n);
    const std::uint64_t original = v;
    while (v) {
      const int b = std::bit_width(v) - 1;
      if (!slot[b]) {
        slot[b] = v;
        rows.push_back(original);
        break;
      }
      v ^= slot[b];
    }
  }
  return BinaryLinearCode(n, std::move(rows));
}

BinaryLinearCode parse_code_file(std::istream& in) {
  int n = 0, k = 0;
  if (!(in >> n >> k)) throw std::invalid_argument("code file: expected header 'n k'");
  check_length(n);
  if (k < 0 || k > n) throw std::invalid_argument("code file: k must lie in [0,n]");

  auto parse_bits = [n](const std::string& s) {
    if (static_cast<int>(s.size()) != n)
      throw std::invalid_argument("code file: row '" + s + "' does not have length " +
                                  std::to_string(n));
    std::uint64_t w = 0;
    for (int i = 0; i < n; ++i) {
      if (s[i] == '1')
        w |= 1ull << i;
      else if (s[i] != '0')
        throw std::invalid_argument("code file: rows must be 0/1 strings");
    }
    return w;
  };

  std::vector<std::uint64_t> rows;
  for (int i = 0; i < k; ++i) {
    std::string s;
    if (!(in >> s)) throw std::invalid_argument("code file: expected " + std::to_string(k) + " rows");
    rows.push_back(parse_bits(s));
  }
  std::uint64_t shift = 0;
  std::string token;
  if (in >> token) {
    if (token != "shift")
      throw std::invalid_argument("code file: unexpected trailing token '" + token + "'");
    std::string s;
    if (!(in >> s)) throw std::invalid_argument("code file: missing shift bits");
    shift = parse_bits(s);
  }
  return BinaryLinearCode(n, std::move(rows), shift);
}

std::string format_code_file(const BinaryLinearCode& code) {
  std::ostringstream out;
  const int n = code.length();
  out << n << ' ' << code.dimension() << '\n';
  auto bits = [n](std::uint64_t w) {
    std::string s(n, '0');
    for (int i = 0; i < n; ++i)
      if (w >> i & 1ull) s[i] = '1';
    return s;
  };
  for (std::uint64_t r : code.rows()) out << bits(r) << '\n';
  if (code.shift()) out << "shift " << bits(code.shift()) << '\n';
  return out.str();
}

}  // namespace lcmi
