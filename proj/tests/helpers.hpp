#ifndef TRADES_TEST_HELPERS_HPP
#define TRADES_TEST_HELPERS_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "trades/core.hpp"

namespace tt {

inline trades::Side side(std::vector<trades::Block> blocks) {
  return trades::Side::from_blocks(blocks);
}

inline trades::Trade trade(int t, std::vector<trades::Block> t1,
                           std::vector<trades::Block> t2) {
  trades::Validation v =
      trades::validate(trades::CandidatePair{t, side(t1), side(t2)});
  REQUIRE(v.ok());
  return *v.trade;
}

// Relabel through a random permutation of the foundation into a spread-out
// label range.
inline trades::Trade shuffled(const trades::Trade& tr, std::mt19937& rng,
                              trades::Label stride = 7) {
  const auto& fnd = tr.foundation();
  std::vector<trades::Label> img(fnd.size());
  for (std::size_t i = 0; i < fnd.size(); ++i)
    img[i] = static_cast<trades::Label>(i * stride + rng() % stride);
  std::shuffle(img.begin(), img.end(), rng);
  auto relabel = [&](const trades::Side& s) {
    std::vector<std::pair<trades::Block, int>> entries;
    for (const auto& [b, m] : s.entries()) {
      trades::Block nb;
      for (trades::Label x : b) {
        std::size_t pos =
            std::lower_bound(fnd.begin(), fnd.end(), x) - fnd.begin();
        nb.push_back(img[pos]);
      }
      std::sort(nb.begin(), nb.end());
      entries.emplace_back(nb, m);
    }
    return trades::Side::from_entries(entries);
  };
  trades::Validation v = trades::validate(
      trades::CandidatePair{tr.strength(), relabel(tr.first()), relabel(tr.second())});
  REQUIRE(v.ok());
  return *v.trade;
}

}  // namespace tt

#endif
