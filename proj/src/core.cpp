#include "trades/core.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace trades {

bool is_valid_block(const Block& b) {
  if (b.empty()) return false;
  for (std::size_t i = 1; i < b.size(); ++i)
    if (b[i - 1] >= b[i]) return false;
  return true;
}

Block make_block(Block elements) {
  std::sort(elements.begin(), elements.end());
  if (!is_valid_block(elements))
    throw std::invalid_argument("block has a repeated element or is empty");
  return elements;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

Side Side::from_blocks(const std::vector<Block>& blocks) {
  std::map<Block, int> counts;
  for (const Block& b : blocks) {
    if (!is_valid_block(b)) throw std::invalid_argument("malformed block");
    ++counts[b];
  }
  Side s;
  s.entries_.assign(counts.begin(), counts.end());
  return s;
}

Side Side::from_entries(std::vector<std::pair<Block, int>> entries) {
  std::map<Block, int> counts;
  for (auto& [b, m] : entries) {
    if (!is_valid_block(b)) throw std::invalid_argument("malformed block");
    if (m < 1) throw std::invalid_argument("multiplicity must be >= 1");
    counts[b] += m;
  }
  Side s;
  s.entries_.assign(counts.begin(), counts.end());
  return s;
}

int Side::volume() const {
  int v = 0;
  for (const auto& [b, m] : entries_) v += m;
  return v;
}

std::size_t Side::block_size() const {
  return entries_.empty() ? 0 : entries_.front().first.size();
}

int Side::multiplicity(const Block& b) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), b,
                             [](const auto& e, const Block& key) { return e.first < key; });
  if (it != entries_.end() && it->first == b) return it->second;
  return 0;
}

std::vector<Label> Side::labels() const {
  std::set<Label> u;
  for (const auto& [b, m] : entries_) u.insert(b.begin(), b.end());
  return {u.begin(), u.end()};
}

std::vector<Block> Side::expanded() const {
  std::vector<Block> out;
  for (const auto& [b, m] : entries_)
    for (int i = 0; i < m; ++i) out.push_back(b);
  return out;
}

namespace {

void check_uniform(const Side& side, std::size_t k, const char* name) {
  for (const auto& [b, m] : side.entries())
    if (b.size() != k)
      throw std::invalid_argument(std::string(name) + ": blocks of mixed size");
}

// Enumerates the t-subsets of a sorted block.
template <typename F>
void for_each_subset(const Block& b, int t, F&& fn) {
  int n = static_cast<int>(b.size());
  std::vector<int> idx(t);
  for (int i = 0; i < t; ++i) idx[i] = i;
  Block sub(t);
  while (true) {
    for (int i = 0; i < t; ++i) sub[i] = b[idx[i]];
    fn(sub);
    int i = t - 1;
    while (i >= 0 && idx[i] == n - t + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

Profile t_profile(const Side& side, int t) {
  if (t < 0) throw std::invalid_argument("t must be non-negative");
  Profile p;
  if (side.empty()) return p;
  std::size_t k = side.block_size();
  check_uniform(side, k, "t_profile");
  if (static_cast<std::size_t>(t) > k)
    throw std::invalid_argument("t exceeds block size");
  if (t == 0) {
    p[Block{}] = side.volume();
    return p;
  }
  for (const auto& [b, m] : side.entries())
    for_each_subset(b, t, [&](const Block& sub) { p[sub] += m; });
  return p;
}

struct TradeAccess {
  static Trade make(int t, int k, Side t1, Side t2, int volume,
                    std::vector<Label> foundation) {
    return Trade(t, k, std::move(t1), std::move(t2), volume, std::move(foundation));
  }
};

Validation validate(const CandidatePair& c) {
  Validation v;
  if (c.t < 1) throw std::invalid_argument("strength t must be >= 1");
  if (c.t1.empty() && c.t2.empty()) {
    v.error = "degenerate: both sides empty";
    return v;
  }
  std::size_t k1 = c.t1.block_size(), k2 = c.t2.block_size();
  std::size_t k = c.t1.empty() ? k2 : k1;
  check_uniform(c.t1, k, "t1");
  check_uniform(c.t2, k, "t2");
  if (!c.t1.empty() && !c.t2.empty() && k1 != k2)
    throw std::invalid_argument("sides have different block sizes");
  if (static_cast<std::size_t>(c.t) >= k)
    throw std::invalid_argument("t must be smaller than the block size");

  int s1 = c.t1.volume(), s2 = c.t2.volume();
  if (s1 != s2) {
    v.error = "side sizes differ: |t1|=" + std::to_string(s1) +
              " |t2|=" + std::to_string(s2);
    return v;
  }
  for (const auto& [b, m] : c.t1.entries()) {
    if (c.t2.multiplicity(b) > 0) {
      std::string blk;
      for (Label x : b) blk += (blk.empty() ? "" : " ") + std::to_string(x);
      v.error = "sides share block {" + blk + "}";
      return v;
    }
  }

  Profile p1 = t_profile(c.t1, c.t), p2 = t_profile(c.t2, c.t);
  // Walk both profiles in lexicographic key order; report the first mismatch.
  auto i1 = p1.begin();
  auto i2 = p2.begin();
  while (i1 != p1.end() || i2 != p2.end()) {
    if (i2 == p2.end() || (i1 != p1.end() && i1->first < i2->first)) {
      v.witness = i1->first;
      v.counts = {i1->second, 0};
    } else if (i1 == p1.end() || i2->first < i1->first) {
      v.witness = i2->first;
      v.counts = {0, i2->second};
    } else if (i1->second != i2->second) {
      v.witness = i1->first;
      v.counts = {i1->second, i2->second};
    } else {
      ++i1;
      ++i2;
      continue;
    }
    std::string sub;
    for (Label x : *v.witness) sub += (sub.empty() ? "" : " ") + std::to_string(x);
    v.error = "imbalanced t-subset {" + sub + "}: counts " +
              std::to_string(v.counts.first) + " vs " + std::to_string(v.counts.second);
    return v;
  }

  std::set<Label> u;
  for (Label x : c.t1.labels()) u.insert(x);
  for (Label x : c.t2.labels()) u.insert(x);
  v.trade = TradeAccess::make(c.t, static_cast<int>(k), c.t1, c.t2, s1,
                              std::vector<Label>(u.begin(), u.end()));
  return v;
}

CandidatePair to_candidate(const Trade& tr, int t) {
  return CandidatePair{t, tr.first(), tr.second()};
}

bool is_steiner(const Trade& tr) {
  for (const auto& [sub, c] : t_profile(tr.first(), tr.strength()))
    if (c > 1) return false;
  return true;
}

bool is_simple(const Trade& tr) {
  for (const auto& [b, m] : tr.first().entries())
    if (m > 1) return false;
  for (const auto& [b, m] : tr.second().entries())
    if (m > 1) return false;
  return true;
}

int replication(const Trade& tr, Label x) {
  int r = 0;
  for (const auto& [b, m] : tr.first().entries())
    if (std::binary_search(b.begin(), b.end(), x)) r += m;
  return r;
}

int pair_index(const Trade& tr, Label x, Label y) {
  if (tr.strength() < 2)
    throw std::invalid_argument("pair_index requires strength t >= 2");
  if (x == y) throw std::invalid_argument("pair_index requires x != y");
  int r = 0;
  for (const auto& [b, m] : tr.first().entries())
    if (std::binary_search(b.begin(), b.end(), x) &&
        std::binary_search(b.begin(), b.end(), y))
      r += m;
  return r;
}

std::vector<Label> serialize(const Trade& tr) {
  constexpr Label kSep = 0xFFFFFFFFu;
  std::vector<Label> out;
  for (const Block& b : tr.first().expanded())
    out.insert(out.end(), b.begin(), b.end());
  out.push_back(kSep);
  for (const Block& b : tr.second().expanded())
    out.insert(out.end(), b.begin(), b.end());
  return out;
}

namespace detail {

namespace {

// Shared state for the minimum-image search. new_of maps old label -> new
// label or -1. Unassigned labels are optimistically valued at `depth`, which
// lower-bounds every completion, so "optimistic > best" is a sound prune.
struct MinImage {
  const std::vector<std::vector<Block>>* groups;
  int n;
  std::vector<int> new_of;
  std::vector<Label> best;
  std::vector<int> best_map;
  bool have_best = false;
  bool stop_below = false;  // early-out mode for canonicity tests
  bool found_below = false;

  std::vector<Label> image(int depth) const {
    std::vector<Label> flat;
    std::vector<Block> relabeled;
    for (const auto& group : *groups) {
      relabeled.clear();
      relabeled.reserve(group.size());
      for (const Block& b : group) {
        Block img(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) {
          int nv = new_of[b[i]];
          img[i] = nv >= 0 ? static_cast<Label>(nv) : static_cast<Label>(depth);
        }
        std::sort(img.begin(), img.end());
        relabeled.push_back(std::move(img));
      }
      std::sort(relabeled.begin(), relabeled.end());
      for (const Block& b : relabeled) flat.insert(flat.end(), b.begin(), b.end());
    }
    return flat;
  }

  void run(int depth) {
    if (found_below) return;
    std::vector<Label> opt = image(depth);
    if (have_best && opt > best) return;
    if (depth == n) {
      if (!have_best || opt < best) {
        if (stop_below && have_best) {
          found_below = true;
          return;
        }
        best = std::move(opt);
        best_map = new_of;
        have_best = true;
      }
      return;
    }
    for (int o = 0; o < n; ++o) {
      if (new_of[o] >= 0) continue;
      new_of[o] = depth;
      run(depth + 1);
      new_of[o] = -1;
      if (found_below) return;
    }
  }
};

}  // namespace

std::vector<Label> min_serialization(const std::vector<std::vector<Block>>& groups,
                                     int n, std::vector<int>* best_map) {
  MinImage m;
  m.groups = &groups;
  m.n = n;
  m.new_of.assign(n, -1);
  m.run(0);
  if (best_map) *best_map = m.best_map;
  return m.best;
}

bool is_min_serialization(const std::vector<std::vector<Block>>& groups, int n) {
  MinImage m;
  m.groups = &groups;
  m.n = n;
  m.new_of.assign(n, -1);
  // Seed with the identity image; any strictly smaller image disproves
  // minimality.
  for (int i = 0; i < n; ++i) m.new_of[i] = i;
  m.best = m.image(n);
  m.have_best = true;
  m.stop_below = true;
  m.new_of.assign(n, -1);
  m.run(0);
  return !m.found_below;
}

}  // namespace detail

namespace {

Side relabel_side(const Side& side, const std::vector<Label>& dense_of,
                  const std::vector<int>& new_of_dense) {
  std::vector<std::pair<Block, int>> entries;
  for (const auto& [b, m] : side.entries()) {
    Block img(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
      img[i] = static_cast<Label>(new_of_dense[dense_of[b[i]]]);
    std::sort(img.begin(), img.end());
    entries.emplace_back(std::move(img), m);
  }
  return Side::from_entries(std::move(entries));
}

}  // namespace

Trade canonical_form(const Trade& tr) {
  const std::vector<Label>& fnd = tr.foundation();
  int n = static_cast<int>(fnd.size());
  // Compress foundation labels to 0..n-1 (order preserving).
  std::vector<Label> dense_of(fnd.back() + 1, 0);
  for (int i = 0; i < n; ++i) dense_of[fnd[i]] = static_cast<Label>(i);

  auto dense_blocks = [&](const Side& side) {
    std::vector<Block> out;
    for (const Block& b : side.expanded()) {
      Block d(b.size());
      for (std::size_t i = 0; i < b.size(); ++i) d[i] = dense_of[b[i]];
      out.push_back(std::move(d));
    }
    return out;
  };
  std::vector<Block> b1 = dense_blocks(tr.first());
  std::vector<Block> b2 = dense_blocks(tr.second());

  std::vector<Label> best;
  std::vector<int> best_map;
  bool best_swapped = false;
  for (bool swapped : {false, true}) {
    std::vector<std::vector<Block>> groups =
        swapped ? std::vector<std::vector<Block>>{b2, b1}
                : std::vector<std::vector<Block>>{b1, b2};
    std::vector<int> map;
    std::vector<Label> ser = detail::min_serialization(groups, n, &map);
    if (best.empty() || ser < best) {
      best = ser;
      best_map = map;
      best_swapped = swapped;
    }
  }

  Side s1 = relabel_side(best_swapped ? tr.second() : tr.first(), dense_of, best_map);
  Side s2 = relabel_side(best_swapped ? tr.first() : tr.second(), dense_of, best_map);
  Validation v = validate(CandidatePair{tr.strength(), s1, s2});
  if (!v.ok()) throw std::logic_error("canonical_form: relabeling broke balance");
  return *v.trade;
}

bool are_isomorphic(const Trade& a, const Trade& b) {
  if (a.strength() != b.strength() || a.block_size() != b.block_size() ||
      a.volume() != b.volume() || a.foundation().size() != b.foundation().size())
    return false;
  return serialize(canonical_form(a)) == serialize(canonical_form(b));
}

}  // namespace trades
