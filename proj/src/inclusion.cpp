#include "trades/inclusion.hpp"

#include <algorithm>
#include <stdexcept>

namespace trades {

std::vector<Block> subsets_of(const std::vector<Label>& labels, int i) {
  int n = static_cast<int>(labels.size());
  std::vector<Block> out;
  if (i < 0 || i > n) return out;
  std::vector<int> idx(i);
  for (int j = 0; j < i; ++j) idx[j] = j;
  while (true) {
    Block b(i);
    for (int j = 0; j < i; ++j) b[j] = labels[idx[j]];
    out.push_back(std::move(b));
    int j = i - 1;
    while (j >= 0 && idx[j] == n - i + j) --j;
    if (j < 0) break;
    ++idx[j];
    for (int l = j + 1; l < i; ++l) idx[l] = idx[l - 1] + 1;
  }
  return out;
}

InclusionMatrix build_matrix(const std::vector<Label>& labels, int t, int k) {
  if (t < 0 || t >= k) throw std::invalid_argument("build_matrix needs 0 <= t < k");
  if (static_cast<std::size_t>(k) > labels.size())
    throw std::invalid_argument("build_matrix needs k <= |labels|");
  std::vector<Label> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("build_matrix labels must be distinct");

  InclusionMatrix m;
  m.t = t;
  m.k = k;
  m.labels = sorted;
  m.rows = subsets_of(sorted, t);
  m.cols = subsets_of(sorted, k);
  m.bits.assign(m.rows.size() * m.cols.size(), 0);
  for (std::size_t c = 0; c < m.cols.size(); ++c) {
    const Block& col = m.cols[c];
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
      const Block& row = m.rows[r];
      bool subset = std::includes(col.begin(), col.end(), row.begin(), row.end());
      m.bits[r * m.cols.size() + c] = subset ? 1 : 0;
    }
  }
  return m;
}

std::vector<std::int64_t> signed_vector(const Trade& tr, const std::vector<Label>& labels) {
  std::vector<Label> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  for (Label x : tr.foundation())
    if (!std::binary_search(sorted.begin(), sorted.end(), x))
      throw std::invalid_argument("signed_vector: foundation not covered by labels");

  std::vector<Block> cols = subsets_of(sorted, tr.block_size());
  std::vector<std::int64_t> v(cols.size(), 0);
  auto place = [&](const Side& side, std::int64_t sign) {
    for (const auto& [b, m] : side.entries()) {
      auto it = std::lower_bound(cols.begin(), cols.end(), b);
      // Foundation coverage guarantees the block is a column.
      v[static_cast<std::size_t>(it - cols.begin())] += sign * m;
    }
  };
  place(tr.first(), +1);
  place(tr.second(), -1);
  return v;
}

bool kernel_check(const InclusionMatrix& m, const std::vector<std::int64_t>& v) {
  if (v.size() != m.col_count())
    throw std::invalid_argument("kernel_check: vector length != column count");
  for (std::size_t r = 0; r < m.row_count(); ++r) {
    std::int64_t acc = 0;
    for (std::size_t c = 0; c < m.col_count(); ++c) {
      if (!m.bits[r * m.col_count() + c]) continue;
      if (__builtin_add_overflow(acc, v[c], &acc))
        throw std::overflow_error("kernel_check: accumulator overflow");
    }
    if (acc != 0) return false;
  }
  return true;
}

}  // namespace trades
