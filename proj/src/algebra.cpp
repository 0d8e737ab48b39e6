#include "trades/algebra.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace trades {

Trade minimal_trade(int t, int k) {
  std::vector<Label> labels(k + t + 1);
  for (int i = 0; i < k + t + 1; ++i) labels[i] = static_cast<Label>(i);
  return minimal_trade(t, k, labels);
}

Trade minimal_trade(int t, int k, const std::vector<Label>& labels) {
  if (t < 1 || k <= t) throw std::invalid_argument("minimal_trade needs 1 <= t < k");
  if (static_cast<int>(labels.size()) != k + t + 1)
    throw std::invalid_argument("minimal_trade needs exactly k+t+1 labels");
  {
    std::vector<Label> u = labels;
    std::sort(u.begin(), u.end());
    if (std::adjacent_find(u.begin(), u.end()) != u.end())
      throw std::invalid_argument("minimal_trade labels must be distinct");
  }

  // labels[2i], labels[2i+1] are the i-th binomial pair; labels[2t+2..] are
  // the fixed tail present in every block.
  Block tail(labels.begin() + 2 * t + 2, labels.end());
  std::vector<Block> plus, minus;
  for (unsigned signs = 0; signs < (1u << (t + 1)); ++signs) {
    Block b = tail;
    int parity = 0;
    for (int i = 0; i <= t; ++i) {
      bool pick_minus = (signs >> i) & 1u;
      b.push_back(labels[2 * i + (pick_minus ? 1 : 0)]);
      parity ^= pick_minus ? 1 : 0;
    }
    std::sort(b.begin(), b.end());
    (parity == 0 ? plus : minus).push_back(std::move(b));
  }
  Validation v = validate(CandidatePair{t, Side::from_blocks(plus), Side::from_blocks(minus)});
  if (!v.ok()) throw std::logic_error("minimal_trade expansion failed validation: " + v.error);
  return *v.trade;
}

StarSplit star_split(const Trade& tr, Label x) {
  if (!std::binary_search(tr.foundation().begin(), tr.foundation().end(), x))
    throw std::invalid_argument("star_split: element not in foundation");
  StarSplit out;
  out.x = x;
  auto split = [&](const Side& side, Side& star, Side& rest) {
    std::vector<std::pair<Block, int>> in, notin;
    for (const auto& [b, m] : side.entries()) {
      if (std::binary_search(b.begin(), b.end(), x))
        in.emplace_back(b, m);
      else
        notin.emplace_back(b, m);
    }
    if (!in.empty()) star = Side::from_entries(std::move(in));
    if (!notin.empty()) rest = Side::from_entries(std::move(notin));
  };
  out.star.t = tr.strength() - 1;
  out.rest.t = tr.strength() - 1;
  split(tr.first(), out.star.t1, out.rest.t1);
  split(tr.second(), out.star.t2, out.rest.t2);
  out.star_is_trade = replication(tr, x) < tr.volume();
  return out;
}

Trade derived_trade(const Trade& tr, Label x) {
  if (tr.strength() < 2)
    throw std::invalid_argument("derived_trade requires t >= 2");
  if (!std::binary_search(tr.foundation().begin(), tr.foundation().end(), x))
    throw std::invalid_argument("derived_trade: element not in foundation");
  auto strip = [&](const Side& side) {
    std::vector<std::pair<Block, int>> entries;
    for (const auto& [b, m] : side.entries()) {
      if (!std::binary_search(b.begin(), b.end(), x)) continue;
      Block d;
      for (Label e : b)
        if (e != x) d.push_back(e);
      entries.emplace_back(std::move(d), m);
    }
    return Side::from_entries(std::move(entries));
  };
  Validation v = validate(CandidatePair{tr.strength() - 1, strip(tr.first()), strip(tr.second())});
  if (!v.ok()) throw std::logic_error("derived_trade failed validation: " + v.error);
  return *v.trade;
}

namespace {

std::optional<Trade> combine(int t, const Side& a1, const Side& b1,
                             const Side& a2, const Side& b2) {
  std::map<Block, int> u1, u2;
  for (const auto& [b, m] : a1.entries()) u1[b] += m;
  for (const auto& [b, m] : b1.entries()) u1[b] += m;
  for (const auto& [b, m] : a2.entries()) u2[b] += m;
  for (const auto& [b, m] : b2.entries()) u2[b] += m;
  // Cancel: a block on both sides is removed min(m1, m2) times from each.
  for (auto& [b, m] : u1) {
    auto it = u2.find(b);
    if (it == u2.end()) continue;
    int c = std::min(m, it->second);
    m -= c;
    it->second -= c;
  }
  std::vector<std::pair<Block, int>> e1, e2;
  for (const auto& [b, m] : u1)
    if (m > 0) e1.emplace_back(b, m);
  for (const auto& [b, m] : u2)
    if (m > 0) e2.emplace_back(b, m);
  if (e1.empty() && e2.empty()) return std::nullopt;
  Validation v = validate(CandidatePair{t, Side::from_entries(std::move(e1)),
                                        Side::from_entries(std::move(e2))});
  if (!v.ok()) throw std::logic_error("trade sum/difference failed validation: " + v.error);
  return *v.trade;
}

void check_compatible(const Trade& a, const Trade& b) {
  if (a.strength() != b.strength() || a.block_size() != b.block_size())
    throw std::invalid_argument("trades must share t and k");
}

}  // namespace

std::optional<Trade> sum(const Trade& a, const Trade& b) {
  check_compatible(a, b);
  return combine(a.strength(), a.first(), b.first(), a.second(), b.second());
}

std::optional<Trade> difference(const Trade& a, const Trade& b) {
  check_compatible(a, b);
  return combine(a.strength(), a.first(), b.second(), a.second(), b.first());
}

bool check_pair_count_identity(const Trade& tr, Label x) {
  if (tr.strength() < 2)
    throw std::invalid_argument("pair count identity requires t >= 2");
  if (!std::binary_search(tr.foundation().begin(), tr.foundation().end(), x))
    throw std::invalid_argument("element not in foundation");
  long long lhs = 0;
  for (Label y : tr.foundation())
    if (y != x) lhs += pair_index(tr, x, y);
  long long rhs = static_cast<long long>(tr.block_size() - 1) * replication(tr, x);
  return lhs == rhs;
}

}  // namespace trades
