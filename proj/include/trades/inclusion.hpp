#ifndef TRADES_INCLUSION_HPP
#define TRADES_INCLUSION_HPP

#include <cstdint>

#include "trades/core.hpp"

namespace trades {

// 0/1 incidence of t-subsets (rows) versus k-subsets (columns) of a label
// set, both in lexicographic order. A candidate pair is a trade exactly when
// its signed block vector lies in the integer kernel, which makes this an
// oracle for validate() that shares no code with the profile comparison.
struct InclusionMatrix {
  int t = 0;
  int k = 0;
  std::vector<Label> labels;
  std::vector<Block> rows;  // t-subsets, lex order
  std::vector<Block> cols;  // k-subsets, lex order
  std::vector<std::uint8_t> bits;  // row-major

  std::size_t row_count() const { return rows.size(); }
  std::size_t col_count() const { return cols.size(); }
  int at(std::size_t r, std::size_t c) const { return bits[r * cols.size() + c]; }
};

InclusionMatrix build_matrix(const std::vector<Label>& labels, int t, int k);

// Entry per k-subset of `labels`: multiplicity in T1 minus multiplicity in
// T2. The trade's foundation must be covered by `labels`.
std::vector<std::int64_t> signed_vector(const Trade& tr, const std::vector<Label>& labels);

// Exact integer test of m * v == 0. Throws on dimension mismatch or overflow.
bool kernel_check(const InclusionMatrix& m, const std::vector<std::int64_t>& v);

// All i-subsets of sorted labels, lexicographic.
std::vector<Block> subsets_of(const std::vector<Label>& labels, int i);

}  // namespace trades

#endif
