#ifndef TRADES_ALGEBRA_HPP
#define TRADES_ALGEBRA_HPP

#include <optional>

#include "trades/core.hpp"

namespace trades {

// Formal expansion of (x1-x2)(x3-x4)...(x_{2t+1}-x_{2t+2}) x_{2t+3}..x_{k+t+1}:
// terms with an even number of minus picks form the first side, odd the
// second. Result is a Steiner trade of volume 2^t on k+t+1 points.
// Default labels are 0..k+t.
Trade minimal_trade(int t, int k);
Trade minimal_trade(int t, int k, const std::vector<Label>& labels);

// Partition of a trade at an element x: the blocks containing x (star, T_x)
// and the rest (T'_x). Both are (t-1)-trades when r_x < s.
struct StarSplit {
  CandidatePair star;  // strength t-1
  CandidatePair rest;  // strength t-1
  Label x = 0;
  bool star_is_trade = false;  // r_x < s
};

StarSplit star_split(const Trade& tr, Label x);

// D_x T: the star with x deleted from every block; a (t-1)-trade of block
// size k-1 and volume r_x. Requires t >= 2 (0-trades are out of scope).
Trade derived_trade(const Trade& tr, Label x);

// T + T* and T - T* with per-block multiset cancellation. Total cancellation
// yields nullopt (the empty result) rather than a degenerate Trade.
std::optional<Trade> sum(const Trade& a, const Trade& b);
std::optional<Trade> difference(const Trade& a, const Trade& b);

// Two-way count of incidences (y, B) with y in B in D_x T:
// sum over y of lambda_xy equals (k-1) * r_x.
bool check_pair_count_identity(const Trade& tr, Label x);

}  // namespace trades

#endif
