#ifndef TRADES_SEARCH_HPP
#define TRADES_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "trades/core.hpp"

namespace trades {

enum class Mode { steiner, simple, general };

std::string mode_name(Mode m);
std::optional<Mode> parse_mode(const std::string& name);

// Pruning rules, individually toggleable so tests can show each one removes
// only non-solutions or duplicates. All on by default.
enum PruneRule : unsigned {
  prune_profile = 1u << 0,      // (a) profile/coverage feasibility lookahead
  prune_replication = 1u << 1,  // (b) per-element replication bounds
  prune_mode = 1u << 2,         // (c) mode constraints during construction
  prune_orbit = 1u << 3,        // (d) lex-minimality of partial T1 in its orbit
  prune_all = (1u << 4) - 1,
};

struct SearchSpec {
  int t = 2;
  int k = 3;
  int s = 4;
  Mode mode = Mode::steiner;
  std::optional<int> max_foundation;
  std::optional<std::uint64_t> node_budget;
  int worker_count = 1;
  unsigned prune_mask = prune_all;
};

enum class SearchStatus { exhausted_empty, witnesses_found, budget_exceeded };

std::string status_name(SearchStatus s);

struct SearchOutcome {
  SearchStatus status = SearchStatus::exhausted_empty;
  std::vector<Trade> witnesses;  // canonical, pairwise non-isomorphic, sorted
  std::uint64_t nodes_visited = 0;
  int max_depth = 0;
  double runtime_seconds = 0.0;
};

// Forbidden volumes: union over i = 0..t-1 of the open integer intervals
// (2^{t+1} - 2^{t-i}, 2^{t+1} - 2^{t-i-1}). The i = 0 interval is the
// (2^t, 2^t + 2^{t-1}) gap.
std::vector<int> forbidden_volumes(int t);

// Foundation size range: lower = k+t+1; upper = floor(s*k / 2^{t-1}) since
// every foundation element has r_x >= 2^{t-1} and the replications sum to
// s*k, capped by max_foundation when set. lower > upper certifies emptiness.
std::pair<int, int> foundation_bounds(const SearchSpec& spec);

// Exhaustive orderly generation of all trades with the given parameters, one
// canonical representative per isomorphism class. worker_count = 1 is the
// reference semantics; any worker count yields the same witnesses and status.
SearchOutcome enumerate_trades(const SearchSpec& spec);

struct GapEntry {
  int s = 0;
  SearchStatus status = SearchStatus::exhausted_empty;
  std::uint64_t nodes = 0;
  std::size_t witness_count = 0;
  double seconds = 0.0;
};

struct GapReport {
  int t = 0;
  Mode mode = Mode::steiner;
  std::vector<GapEntry> entries;
  bool verified = false;  // every entry exhausted-empty
};

// Runs enumerate_trades with k = t+1 for every forbidden volume of t.
GapReport verify_gaps(int t, Mode mode,
                      std::optional<std::uint64_t> node_budget = std::nullopt,
                      int worker_count = 1);

// Unpruned, unreduced reference enumeration over all ordered pairs of
// s-multisets of k-subsets of {0..max_labels-1}, filtered by validate() and
// deduplicated by canonical form. Guarded to tiny scale:
// C(max_labels, k) <= 30 and s <= 4.
std::vector<Trade> brute_force_oracle(int t, int k, int s, int max_labels);

// Certificate ledger line:
// "<t> <k> <s> <mode> <status> <nodes> <seconds> <witness_count> <file_or_dash>"
void append_ledger(const std::string& path, const SearchSpec& spec,
                   const SearchOutcome& outcome, const std::string& witness_file);

}  // namespace trades

#endif
