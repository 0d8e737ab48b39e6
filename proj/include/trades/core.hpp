#ifndef TRADES_CORE_HPP
#define TRADES_CORE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace trades {

// Element labels are opaque non-negative integers; equality is integer
// equality. The ambient v-set is never materialized, only foundations.
using Label = std::uint32_t;

// A block is a strictly increasing sequence of labels (a k-subset).
using Block = std::vector<Label>;

bool is_valid_block(const Block& b);

// Sorts and checks for duplicates; throws std::invalid_argument on a repeat.
Block make_block(Block elements);

std::uint64_t binomial(unsigned n, unsigned k);

// One leg of a trade: a multiset of equal-size blocks, stored as a sorted
// sequence of (block, multiplicity) pairs so serialization is deterministic.
class Side {
 public:
  Side() = default;
  static Side from_blocks(const std::vector<Block>& blocks);
  static Side from_entries(std::vector<std::pair<Block, int>> entries);

  const std::vector<std::pair<Block, int>>& entries() const { return entries_; }
  int volume() const;                    // total count with multiplicity
  std::size_t block_size() const;        // k; 0 when empty
  bool empty() const { return entries_.empty(); }
  int multiplicity(const Block& b) const;
  std::vector<Label> labels() const;     // sorted union of all elements
  std::vector<Block> expanded() const;   // blocks repeated by multiplicity

  bool operator==(const Side&) const = default;

 private:
  std::vector<std::pair<Block, int>> entries_;
};

// Pre-validation container: two sides and a target strength, no balance
// guarantee.
struct CandidatePair {
  int t = 0;
  Side t1;
  Side t2;
};

// Coverage count per t-subset, keys in lexicographic order.
using Profile = std::map<Block, int>;

Profile t_profile(const Side& side, int t);

// A validated t-(v,k) trade. Construction only through validate(); a Trade
// value is t-balanced by construction.
class Trade {
 public:
  int strength() const { return t_; }
  int block_size() const { return k_; }
  const Side& first() const { return t1_; }
  const Side& second() const { return t2_; }
  int volume() const { return volume_; }
  const std::vector<Label>& foundation() const { return foundation_; }

  bool operator==(const Trade&) const = default;

 private:
  Trade(int t, int k, Side t1, Side t2, int volume, std::vector<Label> foundation)
      : t_(t), k_(k), t1_(std::move(t1)), t2_(std::move(t2)),
        volume_(volume), foundation_(std::move(foundation)) {}
  friend struct TradeAccess;

  int t_;
  int k_;
  Side t1_;
  Side t2_;
  int volume_;
  std::vector<Label> foundation_;
};

struct Validation {
  std::optional<Trade> trade;
  std::string error;                  // empty iff trade is set
  std::optional<Block> witness;       // first failing t-subset, if imbalance
  std::pair<int, int> counts{0, 0};   // its counts in (t1, t2)

  bool ok() const { return trade.has_value(); }
};

// The trade definition as a decision procedure. Semantic failures (imbalance,
// size mismatch, shared block, empty pair) come back as a rejection; malformed
// input (non-uniform k, t >= k) throws std::invalid_argument.
Validation validate(const CandidatePair& c);

// Rebuild a candidate from a trade, optionally at a different strength.
CandidatePair to_candidate(const Trade& tr, int t);

bool is_steiner(const Trade& tr);
bool is_simple(const Trade& tr);

// r_x: blocks of t1 containing x, with multiplicity (equals the t2 count).
int replication(const Trade& tr, Label x);

// lambda_xy: blocks of t1 containing both x and y. Requires t >= 2, x != y.
int pair_index(const Trade& tr, Label x, Label y);

// Minimum isomorph under foundation relabeling and side swap; idempotent and
// constant on isomorphism classes.
Trade canonical_form(const Trade& tr);

bool are_isomorphic(const Trade& a, const Trade& b);

// Flat label sequence of both sides (side separator included); equal for two
// trades iff the trades are equal. Used as a dedup key after canonicalization.
std::vector<Label> serialize(const Trade& tr);

namespace detail {
// Minimum over all label bijections {0..n-1} -> {0..n-1} of the flattened
// serialization of the block groups (each group sorted independently).
// Blocks must use labels below n.
std::vector<Label> min_serialization(const std::vector<std::vector<Block>>& groups,
                                     int n, std::vector<int>* best_map = nullptr);
// True iff the identity labeling already attains the minimum.
bool is_min_serialization(const std::vector<std::vector<Block>>& groups, int n);
}  // namespace detail

}  // namespace trades

#endif
