#include "trades/search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "trades/inclusion.hpp"

namespace trades {

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::steiner: return "steiner";
    case Mode::simple: return "simple";
    case Mode::general: return "general";
  }
  return "?";
}

std::optional<Mode> parse_mode(const std::string& name) {
  if (name == "steiner") return Mode::steiner;
  if (name == "simple") return Mode::simple;
  if (name == "general") return Mode::general;
  return std::nullopt;
}

std::string status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::exhausted_empty: return "exhausted-empty";
    case SearchStatus::witnesses_found: return "witnesses-found";
    case SearchStatus::budget_exceeded: return "budget-exceeded";
  }
  return "?";
}

std::vector<int> forbidden_volumes(int t) {
  if (t < 1) throw std::invalid_argument("forbidden_volumes needs t >= 1");
  std::set<int> vols;
  for (int i = 0; i < t; ++i) {
    long long lo = (1LL << (t + 1)) - (1LL << (t - i));
    long long hi = (1LL << (t + 1)) - (1LL << (t - i - 1));
    for (long long s = lo + 1; s < hi; ++s) vols.insert(static_cast<int>(s));
  }
  return {vols.begin(), vols.end()};
}

std::pair<int, int> foundation_bounds(const SearchSpec& spec) {
  if (spec.t < 1 || spec.k <= spec.t || spec.s < 1)
    throw std::invalid_argument("foundation_bounds needs 1 <= t < k, s >= 1");
  int lower = spec.k + spec.t + 1;
  // Sum of replications is s*k and each foundation element has
  // r_x = vol(D_x T) >= 2^{t-1}.
  long long cap = static_cast<long long>(spec.s) * spec.k / (1LL << (spec.t - 1));
  if (spec.max_foundation && *spec.max_foundation < cap) cap = *spec.max_foundation;
  return {lower, static_cast<int>(cap)};
}

namespace {

constexpr int kMaxUniverse = 32;  // labels fit in a 32-bit mask

struct Engine {
  // Fixed configuration.
  int t, k, s;
  Mode mode;
  unsigned prunes;
  int universe = 0;  // labels 0..universe-1
  int r_min = 1, r_max = 0;
  int orbit_depth = 5;
  std::vector<Block> blocks;           // all k-subsets, lex order
  std::vector<std::uint32_t> block_mask;
  std::vector<std::vector<int>> block_subs;  // t-subset indices per block
  std::vector<Block> tsubs;                  // all t-subsets, lex order
  bool allow_repeats = false;

  // Steiner k=t+1 only: the blocks through a fixed i-subset, with the subset
  // removed, form a Steiner (t-i)-trade whose volume is the subset's coverage.
  // That bounds the coverage by s/2^i and rules out lower-order gap volumes.
  bool steiner_tight = false;
  std::vector<char> rep_ok;   // final replication values allowed (index <= r_max)
  int pair_max = 0;           // cap on pair coverage while building (t >= 3)
  int pair_min = 0;           // least allowed nonzero pair coverage
  std::vector<char> pair_ok;  // final pair coverage values allowed

  // Shared counters and results.
  std::atomic<std::uint64_t> nodes{0};
  std::uint64_t budget = 0;
  bool has_budget = false;
  std::atomic<bool> over_budget{false};
  std::atomic<int> max_depth{0};
  std::mutex sink_mutex;
  std::map<std::vector<Label>, Trade> found;  // canonical key -> witness

  bool tick(int depth) {
    if (over_budget.load(std::memory_order_relaxed)) return false;
    std::uint64_t n = nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (has_budget && n > budget) {
      over_budget.store(true, std::memory_order_relaxed);
      return false;
    }
    int cur = max_depth.load(std::memory_order_relaxed);
    while (depth > cur &&
           !max_depth.compare_exchange_weak(cur, depth, std::memory_order_relaxed)) {
    }
    return true;
  }

  void record(const std::vector<Block>& t1, const std::vector<Block>& t2) {
    Validation v =
        validate(CandidatePair{t, Side::from_blocks(t1), Side::from_blocks(t2)});
    if (!v.ok())
      throw std::logic_error("search produced an invalid trade: " + v.error);
    const Trade& tr = *v.trade;
    if (mode == Mode::steiner && !is_steiner(tr)) return;
    if (mode == Mode::simple && !is_simple(tr)) return;
    Trade canon = canonical_form(tr);
    std::vector<Label> key = serialize(canon);
    std::lock_guard<std::mutex> lock(sink_mutex);
    found.emplace(std::move(key), std::move(canon));
  }
};

// Per-branch search state; copyable so subtrees can be handed to workers.
struct T1State {
  std::vector<int> chosen;          // block indices, nondecreasing
  std::vector<Block> prefix;        // same blocks, expanded
  std::vector<int> cnt;             // per t-subset coverage in T1
  std::vector<int> rep;             // per label
  std::vector<int> pcnt;            // per label pair, when the engine needs it
  long long pair_deficit = 0;       // sum over pairs of (pair_min - coverage)+
  int used = 0;                     // labels 0..used-1 are in play
  int next_from = 0;                // first block index to try next
};

class Searcher {
 public:
  Searcher(Engine& e) : e_(e) {}

  // When split_depth >= 0, stop at that T1 depth and collect states instead
  // of recursing further.
  void run(T1State st, int split_depth = -1, std::vector<T1State>* sink = nullptr) {
    split_depth_ = split_depth;
    sink_ = sink;
    extend_t1(st);
  }

 private:
  Engine& e_;
  int split_depth_ = -1;
  std::vector<T1State>* sink_ = nullptr;

  void extend_t1(T1State& st) {
    if (e_.over_budget.load(std::memory_order_relaxed)) return;
    if (static_cast<int>(st.chosen.size()) == e_.s) {
      complete_t1(st);
      return;
    }
    if (split_depth_ >= 0 && static_cast<int>(st.chosen.size()) == split_depth_) {
      sink_->push_back(st);
      return;
    }
    int n_blocks = static_cast<int>(e_.blocks.size());
    int checked_front = 0;  // labels/pairs below this have passed finalization
    for (int bi = st.next_from; bi < n_blocks; ++bi) {
      if (e_.over_budget.load(std::memory_order_relaxed)) return;
      const Block& b = e_.blocks[bi];

      // Block fronts are nondecreasing in lex order, so everything below the
      // front is finalized: its coverage can never grow again. A violated
      // finalization kills every later candidate too, hence the break.
      int front = static_cast<int>(b.front());
      if (front > checked_front) {
        bool dead = false;
        int hi = std::min(front, st.used);
        for (int x = checked_front; x < hi && !dead; ++x) {
          if (e_.prunes & prune_replication) {
            int r = st.rep[x];
            dead = e_.steiner_tight ? (r > e_.r_max || !e_.rep_ok[r]) : (r < e_.r_min);
          }
          if (!dead && !st.pcnt.empty() && (e_.prunes & prune_mode))
            for (int y = 0; y < x; ++y) {
              int c = st.pcnt[y * e_.universe + x];
              if (c > e_.pair_max || !e_.pair_ok[c]) {
                dead = true;
                break;
              }
            }
        }
        if (dead) break;
        checked_front = hi;
      }

      // New labels may only be the smallest unused ones, in order.
      int fresh = 0;
      bool ok = true;
      for (Label x : b) {
        if (static_cast<int>(x) >= st.used) {
          if (static_cast<int>(x) != st.used + fresh) {
            ok = false;
            break;
          }
          ++fresh;
        }
      }
      if (!ok) continue;
      int used2 = st.used + fresh;

      if (e_.prunes & prune_mode) {
        if (e_.mode == Mode::steiner) {
          bool clash = false;
          for (int si : e_.block_subs[bi])
            if (st.cnt[si] > 0) {
              clash = true;
              break;
            }
          if (clash) continue;
          if (!st.pcnt.empty()) {
            bool overp = false;
            long long deficit = st.pair_deficit;
            for (std::size_t i = 0; i < b.size() && !overp; ++i)
              for (std::size_t j = i + 1; j < b.size(); ++j) {
                int c = st.pcnt[b[i] * e_.universe + b[j]];
                if (c + 1 > e_.pair_max) {
                  overp = true;
                  break;
                }
                deficit += (c + 1 < e_.pair_min ? e_.pair_min - c - 1 : 0) -
                           (c > 0 && c < e_.pair_min ? e_.pair_min - c : 0);
              }
            // Every deficient pair still needs lifting to pair_min, and one
            // block can lift at most C(k,2) pairs by one step each.
            long long lift = static_cast<long long>(e_.k) * (e_.k - 1) / 2 *
                             (e_.s - static_cast<int>(st.chosen.size()) - 1);
            if (overp || deficit > lift) continue;
          }
        }
        // simple mode: repeats already excluded via next_from stepping.
      }

      if (e_.prunes & prune_profile) {
        bool over = false;
        for (int si : e_.block_subs[bi])
          if (st.cnt[si] + 1 > e_.s) {  // T2 can match a t-subset at most s times
            over = true;
            break;
          }
        if (over) continue;
      }

      if (e_.prunes & prune_replication) {
        bool bad = false;
        for (Label x : b)
          if (static_cast<int>(x) < st.used && st.rep[x] + 1 > e_.r_max) {
            bad = true;
            break;
          }
        if (bad) continue;
        // Remaining blocks must be able to lift every deficit to r_min.
        long long needed = 0;
        for (int x = 0; x < used2; ++x) {
          int r = st.rep[x] + (std::binary_search(b.begin(), b.end(), static_cast<Label>(x)) ? 1 : 0);
          if (r < e_.r_min) needed += e_.r_min - r;
        }
        long long slots =
            static_cast<long long>(e_.s - static_cast<int>(st.chosen.size()) - 1) * e_.k;
        if (needed > slots) continue;
      }

      // Apply.
      st.chosen.push_back(bi);
      st.prefix.push_back(b);
      for (int si : e_.block_subs[bi]) ++st.cnt[si];
      for (Label x : b) ++st.rep[x];
      if (!st.pcnt.empty())
        for (std::size_t i = 0; i < b.size(); ++i)
          for (std::size_t j = i + 1; j < b.size(); ++j) {
            int& c = st.pcnt[b[i] * e_.universe + b[j]];
            st.pair_deficit += (c + 1 < e_.pair_min ? e_.pair_min - c - 1 : 0) -
                               (c > 0 && c < e_.pair_min ? e_.pair_min - c : 0);
            ++c;
          }
      int saved_used = st.used;
      st.used = used2;
      int saved_from = st.next_from;
      st.next_from = e_.allow_repeats ? bi : bi + 1;

      bool keep = true;
      if ((e_.prunes & prune_orbit) &&
          static_cast<int>(st.chosen.size()) <= e_.orbit_depth) {
        // Only a partial T1 that is lex-minimal in its relabeling orbit can
        // extend to the class representative. The min-image test is costly,
        // so it only guards the shallow, symmetry-rich part of the tree;
        // deeper duplicates are collapsed by canonical_form at record time.
        keep = detail::is_min_serialization({st.prefix}, st.used);
      }
      if (keep) keep = e_.tick(static_cast<int>(st.chosen.size()));
      if (keep) extend_t1(st);

      // Undo.
      st.next_from = saved_from;
      st.used = saved_used;
      if (!st.pcnt.empty())
        for (std::size_t i = 0; i < b.size(); ++i)
          for (std::size_t j = i + 1; j < b.size(); ++j) {
            int& c = st.pcnt[b[i] * e_.universe + b[j]];
            --c;
            st.pair_deficit -= (c + 1 < e_.pair_min ? e_.pair_min - c - 1 : 0) -
                               (c > 0 && c < e_.pair_min ? e_.pair_min - c : 0);
          }
      for (Label x : b) --st.rep[x];
      for (int si : e_.block_subs[bi]) --st.cnt[si];
      st.prefix.pop_back();
      st.chosen.pop_back();
    }
  }

  struct T2Env {
    std::vector<int> deficit;                  // per t-subset
    std::vector<std::vector<int>> covers;      // t-subset -> candidate block ids
    std::vector<int> block_count;              // chosen multiplicity in T2
    std::vector<int> chosen;                   // block ids, in pick order
    std::set<int> t1_blocks;
  };

  void complete_t1(T1State& st) {
    if (e_.prunes & prune_replication) {
      if (st.used < e_.k + e_.t + 1) return;
      for (int x = 0; x < st.used; ++x) {
        int r = st.rep[x];
        if (e_.steiner_tight ? (r > e_.r_max || !e_.rep_ok[r]) : (r < e_.r_min)) return;
      }
    }
    if (!st.pcnt.empty() && (e_.prunes & prune_mode))
      for (int x = 0; x < st.used; ++x)
        for (int y = x + 1; y < st.used; ++y) {
          int c = st.pcnt[x * e_.universe + y];
          if (c > e_.pair_max || !e_.pair_ok[c]) return;
        }

    T2Env env;
    env.deficit = st.cnt;
    env.t1_blocks.insert(st.chosen.begin(), st.chosen.end());
    env.block_count.assign(e_.blocks.size(), 0);
    env.covers.assign(e_.tsubs.size(), {});
    std::uint32_t used_mask =
        st.used == 32 ? 0xFFFFFFFFu : ((1u << st.used) - 1);
    for (int bi = 0; bi < static_cast<int>(e_.blocks.size()); ++bi) {
      if ((e_.block_mask[bi] & ~used_mask) != 0) continue;
      if (env.t1_blocks.count(bi)) continue;  // sides share no block
      bool feasible = true;
      for (int si : e_.block_subs[bi])
        if (st.cnt[si] == 0) {  // would overshoot a t-subset T1 never covers
          feasible = false;
          break;
        }
      if (!feasible) continue;
      for (int si : e_.block_subs[bi]) env.covers[si].push_back(bi);
    }
    extend_t2(st, env, 0, -1, -1);
  }

  void extend_t2(T1State& st, T2Env& env, int scan_from, int last_sub, int last_block) {
    if (e_.over_budget.load(std::memory_order_relaxed)) return;
    // The smallest deficient t-subset is nondecreasing along a branch.
    int s_idx = -1;
    for (int i = scan_from; i < static_cast<int>(env.deficit.size()); ++i)
      if (env.deficit[i] > 0) {
        s_idx = i;
        break;
      }
    if (s_idx < 0) {
      std::vector<Block> t2;
      for (int bi : env.chosen) t2.push_back(e_.blocks[bi]);
      e_.record(st.prefix, t2);
      return;
    }
    // Every completion must cover s_idx now; branch over its candidates.
    // Picks for the same subset are made in nondecreasing block order so each
    // T2 multiset is built exactly once.
    for (int bi : env.covers[s_idx]) {
      if (s_idx == last_sub && bi < last_block) continue;
      bool ok = true;
      for (int si : e_.block_subs[bi])
        if (env.deficit[si] < 1) {
          ok = false;
          break;
        }
      if (!ok) continue;
      if (env.block_count[bi] > 0 && e_.mode != Mode::general &&
          (e_.prunes & prune_mode))
        continue;
      if (!e_.tick(e_.s + static_cast<int>(env.chosen.size()) + 1)) return;
      for (int si : e_.block_subs[bi]) --env.deficit[si];
      ++env.block_count[bi];
      env.chosen.push_back(bi);
      extend_t2(st, env, s_idx, s_idx, bi);
      env.chosen.pop_back();
      --env.block_count[bi];
      for (int si : e_.block_subs[bi]) ++env.deficit[si];
      if (e_.over_budget.load(std::memory_order_relaxed)) return;
    }
  }
};

}  // namespace

SearchOutcome enumerate_trades(const SearchSpec& spec) {
  if (spec.t < 1 || spec.k <= spec.t || spec.s < 1 || spec.worker_count < 1)
    throw std::invalid_argument("enumerate_trades: invalid spec");
  auto start = std::chrono::steady_clock::now();
  auto finish = [&](SearchOutcome out) {
    out.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  };

  auto [lower, upper] = foundation_bounds(spec);
  SearchOutcome out;
  if (lower > upper || upper < spec.k) {
    out.status = SearchStatus::exhausted_empty;  // degenerate range
    return finish(out);
  }
  if (upper > kMaxUniverse)
    throw std::invalid_argument(
        "enumerate_trades: foundation bound exceeds engine limit of 32 labels; "
        "set max_foundation");

  Engine e;
  e.t = spec.t;
  e.k = spec.k;
  e.s = spec.s;
  e.mode = spec.mode;
  e.prunes = spec.prune_mask;
  e.universe = upper;
  e.r_min = 1 << (spec.t - 1);
  e.steiner_tight = spec.mode == Mode::steiner && spec.k == spec.t + 1 && spec.t >= 2;
  e.r_max = e.steiner_tight ? spec.s / 2 : spec.s;
  if (e.steiner_tight) {
    // r_x = vol(D_x T), a Steiner (t-1)-trade, so it avoids the lower-order
    // gap volumes; likewise pair coverage is the volume of a twice-derived
    // Steiner trade.
    std::vector<int> forb = forbidden_volumes(spec.t - 1);
    e.rep_ok.assign(e.r_max + 1, 0);
    int top = 0;
    for (int r = e.r_min; r <= e.r_max; ++r)
      if (!std::binary_search(forb.begin(), forb.end(), r)) {
        e.rep_ok[r] = 1;
        top = r;
      }
    if (top == 0) {  // no admissible replication value: s < 2^t
      out.status = SearchStatus::exhausted_empty;
      return finish(out);
    }
    e.r_max = top;
    if (spec.t >= 3) {
      e.pair_max = e.r_max / 2;
      e.pair_min = 1 << (spec.t - 2);
      std::vector<int> forb2 = forbidden_volumes(spec.t - 2);
      e.pair_ok.assign(e.pair_max + 1, 0);
      e.pair_ok[0] = 1;
      for (int c = e.pair_min; c <= e.pair_max; ++c)
        if (!std::binary_search(forb2.begin(), forb2.end(), c)) e.pair_ok[c] = 1;
    }
  }
  e.allow_repeats = (spec.mode == Mode::general) || !(spec.prune_mask & prune_mode);
  if (spec.node_budget) {
    e.has_budget = true;
    e.budget = *spec.node_budget;
  }

  std::vector<Label> all(upper);
  for (int i = 0; i < upper; ++i) all[i] = static_cast<Label>(i);
  e.blocks = subsets_of(all, spec.k);
  e.tsubs = subsets_of(all, spec.t);
  std::map<Block, int> sub_index;
  for (int i = 0; i < static_cast<int>(e.tsubs.size()); ++i) sub_index[e.tsubs[i]] = i;
  e.block_mask.resize(e.blocks.size());
  e.block_subs.resize(e.blocks.size());
  for (std::size_t bi = 0; bi < e.blocks.size(); ++bi) {
    std::uint32_t m = 0;
    for (Label x : e.blocks[bi]) m |= 1u << x;
    e.block_mask[bi] = m;
    for (const Block& sub : subsets_of(e.blocks[bi], spec.t))
      e.block_subs[bi].push_back(sub_index.at(sub));
  }

  T1State root;
  root.cnt.assign(e.tsubs.size(), 0);
  root.rep.assign(upper, 0);
  if (e.steiner_tight && spec.t >= 3) root.pcnt.assign(upper * upper, 0);

  if (spec.worker_count == 1) {
    Searcher(e).run(root);
  } else {
    // Split at the second T1 block; each prefix subtree is an independent task.
    std::vector<T1State> tasks;
    Searcher(e).run(root, std::min(2, spec.s), &tasks);
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        T1State st = tasks[i];
        Searcher(e).run(st);
      }
    };
    std::vector<std::thread> pool;
    int n = std::min(spec.worker_count,
                     static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
    for (int i = 0; i < n; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  out.nodes_visited = e.nodes.load();
  out.max_depth = e.max_depth.load();
  for (auto& [key, tr] : e.found) out.witnesses.push_back(tr);
  if (e.over_budget.load())
    out.status = SearchStatus::budget_exceeded;
  else
    out.status = out.witnesses.empty() ? SearchStatus::exhausted_empty
                                       : SearchStatus::witnesses_found;
  return finish(out);
}

GapReport verify_gaps(int t, Mode mode, std::optional<std::uint64_t> node_budget,
                      int worker_count) {
  if (t < 2) throw std::invalid_argument("verify_gaps needs t >= 2");
  GapReport report;
  report.t = t;
  report.mode = mode;
  report.verified = true;
  for (int s : forbidden_volumes(t)) {
    SearchSpec spec;
    spec.t = t;
    spec.k = t + 1;
    spec.s = s;
    spec.mode = mode;
    spec.node_budget = node_budget;
    spec.worker_count = worker_count;
    SearchOutcome out = enumerate_trades(spec);
    report.entries.push_back(
        {s, out.status, out.nodes_visited, out.witnesses.size(), out.runtime_seconds});
    if (out.status != SearchStatus::exhausted_empty) report.verified = false;
  }
  return report;
}

std::vector<Trade> brute_force_oracle(int t, int k, int s, int max_labels) {
  if (t < 1 || k <= t || s < 1 || max_labels < k)
    throw std::invalid_argument("brute_force_oracle: invalid parameters");
  if (binomial(max_labels, k) > 30 || s > 4)
    throw std::invalid_argument(
        "brute_force_oracle: scale guard (C(max_labels,k) <= 30, s <= 4)");

  std::vector<Label> all(max_labels);
  for (int i = 0; i < max_labels; ++i) all[i] = static_cast<Label>(i);
  std::vector<Block> blocks = subsets_of(all, k);
  int n = static_cast<int>(blocks.size());

  // All s-multisets as nondecreasing index sequences.
  std::vector<std::vector<int>> multisets;
  std::vector<int> cur;
  auto gen = [&](auto&& self, int from) -> void {
    if (static_cast<int>(cur.size()) == s) {
      multisets.push_back(cur);
      return;
    }
    for (int i = from; i < n; ++i) {
      cur.push_back(i);
      self(self, i);
      cur.pop_back();
    }
  };
  gen(gen, 0);

  std::vector<Side> sides;
  sides.reserve(multisets.size());
  for (const auto& ms : multisets) {
    std::vector<Block> bs;
    for (int i : ms) bs.push_back(blocks[i]);
    sides.push_back(Side::from_blocks(bs));
  }
  // Group by t-profile; only equal-profile pairs can validate.
  std::map<Profile, std::vector<int>> by_profile;
  for (int i = 0; i < static_cast<int>(sides.size()); ++i)
    by_profile[t_profile(sides[i], t)].push_back(i);

  std::map<std::vector<Label>, Trade> classes;
  for (const auto& [prof, ids] : by_profile) {
    for (std::size_t a = 0; a < ids.size(); ++a) {
      for (std::size_t b = a + 1; b < ids.size(); ++b) {
        Validation v = validate(CandidatePair{t, sides[ids[a]], sides[ids[b]]});
        if (!v.ok()) continue;
        Trade canon = canonical_form(*v.trade);
        classes.emplace(serialize(canon), std::move(canon));
      }
    }
  }
  std::vector<Trade> out;
  for (auto& [key, tr] : classes) out.push_back(tr);
  return out;
}

void append_ledger(const std::string& path, const SearchSpec& spec,
                   const SearchOutcome& outcome, const std::string& witness_file) {
  std::ofstream f(path, std::ios::app);
  if (!f) throw std::runtime_error("cannot open ledger " + path);
  char sec[32];
  std::snprintf(sec, sizeof sec, "%.3f", outcome.runtime_seconds);
  f << spec.t << ' ' << spec.k << ' ' << spec.s << ' ' << mode_name(spec.mode) << ' '
    << status_name(outcome.status) << ' ' << outcome.nodes_visited << ' ' << sec << ' '
    << outcome.witnesses.size() << ' ' << (witness_file.empty() ? "-" : witness_file)
    << '\n';
}

}  // namespace trades
