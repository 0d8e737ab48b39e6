#include "doctest.h"

#include "trades/algebra.hpp"
#include "trades/inclusion.hpp"

#include "helpers.hpp"

using namespace trades;
using tt::side;

namespace {

std::vector<Label> range_labels(int n) {
  std::vector<Label> l(n);
  for (int i = 0; i < n; ++i) l[i] = static_cast<Label>(i);
  return l;
}

}  // namespace

TEST_CASE("build_matrix dimensions and line sums") {
  InclusionMatrix m = build_matrix(range_labels(4), 1, 2);
  CHECK(m.row_count() == 4);
  CHECK(m.col_count() == 6);
  for (std::size_t c = 0; c < m.col_count(); ++c) {
    int colsum = 0;
    for (std::size_t r = 0; r < m.row_count(); ++r) colsum += m.at(r, c);
    CHECK(colsum == 2);  // C(k,t)
  }
  for (std::size_t r = 0; r < m.row_count(); ++r) {
    int rowsum = 0;
    for (std::size_t c = 0; c < m.col_count(); ++c) rowsum += m.at(r, c);
    CHECK(rowsum == 3);  // C(f-t, k-t)
  }

  InclusionMatrix big = build_matrix(range_labels(6), 2, 3);
  CHECK(big.row_count() == 15);
  CHECK(big.col_count() == 20);

  InclusionMatrix ones = build_matrix(range_labels(3), 1, 3);
  CHECK(ones.row_count() == 3);
  CHECK(ones.col_count() == 1);
  for (std::size_t r = 0; r < 3; ++r) CHECK(ones.at(r, 0) == 1);

  CHECK_THROWS_AS(build_matrix(range_labels(3), 2, 2), std::invalid_argument);
}

TEST_CASE("signed_vector reads off multiplicities") {
  Trade m1 = minimal_trade(1, 2);
  auto labels = range_labels(4);
  auto v = signed_vector(m1, labels);
  // columns lex: 01 02 03 12 13 23
  CHECK(v == std::vector<std::int64_t>{0, 1, -1, -1, 1, 0});

  auto doubled = sum(m1, m1);
  REQUIRE(doubled.has_value());
  auto v2 = signed_vector(*doubled, labels);
  CHECK(v2 == std::vector<std::int64_t>{0, 2, -2, -2, 2, 0});

  // padding labels outside the foundation stay zero
  auto padded = signed_vector(m1, range_labels(5));
  std::int64_t nonzero = 0;
  for (auto x : padded) nonzero += (x != 0);
  CHECK(padded.size() == 10);
  CHECK(nonzero == 4);

  CHECK_THROWS_AS(signed_vector(m1, range_labels(3)), std::invalid_argument);
}

TEST_CASE("kernel_check") {
  InclusionMatrix m = build_matrix(range_labels(4), 1, 2);
  Trade m1 = minimal_trade(1, 2);
  CHECK(kernel_check(m, signed_vector(m1, range_labels(4))));

  std::vector<std::int64_t> unit(6, 0);
  unit[0] = 1;
  CHECK_FALSE(kernel_check(m, unit));

  CHECK(kernel_check(m, std::vector<std::int64_t>(6, 0)));
  CHECK_THROWS_AS(kernel_check(m, std::vector<std::int64_t>(5, 0)),
                  std::invalid_argument);
}

// validate() and the kernel oracle must agree: a candidate with equal side
// sizes and disjoint sides is a trade iff its signed vector is in the kernel.
TEST_CASE("oracle equivalence, exhaustive at tiny scale") {
  auto labels = range_labels(4);
  std::vector<Block> blocks = subsets_of(labels, 2);  // 6 blocks
  InclusionMatrix m = build_matrix(labels, 1, 2);

  // all 2-multisets of blocks
  std::vector<std::vector<Block>> multisets;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = i; j < blocks.size(); ++j)
      multisets.push_back({blocks[i], blocks[j]});

  int agreements = 0, valid = 0;
  for (const auto& a : multisets) {
    for (const auto& b : multisets) {
      Side s1 = Side::from_blocks(a), s2 = Side::from_blocks(b);
      bool disjoint = true;
      for (const auto& [blk, mult] : s1.entries())
        if (s2.multiplicity(blk) > 0) disjoint = false;
      Validation v = validate(CandidatePair{1, s1, s2});

      // kernel route
      std::vector<std::int64_t> vec(m.col_count(), 0);
      auto idx = [&](const Block& blk) {
        return std::lower_bound(m.cols.begin(), m.cols.end(), blk) - m.cols.begin();
      };
      for (const Block& blk : a) vec[idx(blk)] += 1;
      for (const Block& blk : b) vec[idx(blk)] -= 1;
      bool kernel = kernel_check(m, vec);

      CHECK(v.ok() == (kernel && disjoint));
      agreements += (v.ok() == (kernel && disjoint));
      valid += v.ok();
    }
  }
  CHECK(valid > 0);
  CHECK(agreements == static_cast<int>(multisets.size() * multisets.size()));
}

TEST_CASE("oracle equivalence, randomized over 8 labels") {
  std::mt19937 rng(41);
  auto labels = range_labels(8);
  std::vector<Block> blocks = subsets_of(labels, 3);
  InclusionMatrix m = build_matrix(labels, 2, 3);
  for (int rep = 0; rep < 3000; ++rep) {
    int n = 1 + static_cast<int>(rng() % 4);
    std::vector<Block> a, b;
    for (int i = 0; i < n; ++i) {
      a.push_back(blocks[rng() % blocks.size()]);
      b.push_back(blocks[rng() % blocks.size()]);
    }
    Side s1 = Side::from_blocks(a), s2 = Side::from_blocks(b);
    bool disjoint = true;
    for (const auto& [blk, mult] : s1.entries())
      if (s2.multiplicity(blk) > 0) disjoint = false;
    Validation v = validate(CandidatePair{2, s1, s2});

    std::vector<std::int64_t> vec(m.col_count(), 0);
    auto idx = [&](const Block& blk) {
      return std::lower_bound(m.cols.begin(), m.cols.end(), blk) - m.cols.begin();
    };
    for (const Block& blk : a) vec[idx(blk)] += 1;
    for (const Block& blk : b) vec[idx(blk)] -= 1;
    CHECK(v.ok() == (kernel_check(m, vec) && disjoint));
  }
}
