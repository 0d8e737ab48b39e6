#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <set>

#include "trades/algebra.hpp"
#include "trades/search.hpp"

#include "helpers.hpp"

using namespace trades;

namespace {

std::set<std::vector<Label>> class_keys(const std::vector<Trade>& ws) {
  std::set<std::vector<Label>> keys;
  for (const Trade& w : ws) keys.insert(serialize(canonical_form(w)));
  return keys;
}

}  // namespace

TEST_CASE("forbidden_volumes matches the gap arithmetic") {
  CHECK(forbidden_volumes(1).empty());
  CHECK(forbidden_volumes(2) == std::vector<int>{5});
  CHECK(forbidden_volumes(3) == std::vector<int>{9, 10, 11, 13});
  CHECK(forbidden_volumes(4) ==
        std::vector<int>{17, 18, 19, 20, 21, 22, 23, 25, 26, 27, 29});
}

TEST_CASE("foundation_bounds") {
  auto b1 = foundation_bounds({.t = 2, .k = 3, .s = 5});
  CHECK(b1 == std::pair<int, int>{6, 7});
  auto b2 = foundation_bounds({.t = 3, .k = 4, .s = 9});
  CHECK(b2 == std::pair<int, int>{8, 9});
  auto b3 = foundation_bounds({.t = 3, .k = 4, .s = 13});
  CHECK(b3 == std::pair<int, int>{8, 13});
  auto capped = foundation_bounds({.t = 2, .k = 3, .s = 5, .max_foundation = 6});
  CHECK(capped.second == 6);
}

TEST_CASE("enumerate finds the unique minimal 2-(v,3) trade at s=4") {
  SearchOutcome out = enumerate_trades({.t = 2, .k = 3, .s = 4});
  CHECK(out.status == SearchStatus::witnesses_found);
  REQUIRE(out.witnesses.size() == 1);
  CHECK(are_isomorphic(out.witnesses[0], minimal_trade(2, 3)));
}

TEST_CASE("enumerate certifies emptiness at forbidden volumes") {
  for (Mode mode : {Mode::steiner, Mode::simple, Mode::general}) {
    SearchOutcome out = enumerate_trades({.t = 2, .k = 3, .s = 5, .mode = mode});
    CHECK(out.status == SearchStatus::exhausted_empty);
    CHECK(out.witnesses.empty());
  }
  // Steiner trades with k > t+1 need s >= (t-1)2^t + 2 = 6
  SearchOutcome k4 = enumerate_trades({.t = 2, .k = 4, .s = 5});
  CHECK(k4.status == SearchStatus::exhausted_empty);
}

TEST_CASE("node budget produces an inconclusive outcome, never a claim") {
  SearchOutcome out = enumerate_trades({.t = 2, .k = 3, .s = 5, .node_budget = 1});
  CHECK(out.status == SearchStatus::budget_exceeded);
  GapReport rep = verify_gaps(3, Mode::steiner, 1);
  CHECK_FALSE(rep.verified);
  for (const auto& e : rep.entries) CHECK(e.status == SearchStatus::budget_exceeded);
}

TEST_CASE("verify_gaps t=2 steiner") {
  GapReport rep = verify_gaps(2, Mode::steiner);
  CHECK(rep.verified);
  REQUIRE(rep.entries.size() == 1);
  CHECK(rep.entries[0].s == 5);
  CHECK(rep.entries[0].status == SearchStatus::exhausted_empty);
}

TEST_CASE("brute force oracle at tiny scale") {
  auto classes = brute_force_oracle(1, 2, 2, 4);
  REQUIRE(classes.size() == 1);
  CHECK(are_isomorphic(classes[0], minimal_trade(1, 2)));
  CHECK_THROWS_AS(brute_force_oracle(2, 3, 5, 10), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_oracle(1, 2, 9, 4), std::invalid_argument);
}

TEST_CASE("oracle equivalence on small parameter grid") {
  for (auto [t, k] : {std::pair{1, 2}, std::pair{2, 3}}) {
    for (int s = 1; s <= 3; ++s) {
      int max_labels = k + 3;
      auto oracle = brute_force_oracle(t, k, s, max_labels);
      SearchOutcome out = enumerate_trades({.t = t,
                                            .k = k,
                                            .s = s,
                                            .mode = Mode::general,
                                            .max_foundation = max_labels});
      CHECK(out.status != SearchStatus::budget_exceeded);
      CHECK(class_keys(out.witnesses) == class_keys(oracle));
    }
  }
}

TEST_CASE("witness soundness: volume, mode, validation, no duplicates") {
  SearchOutcome out =
      enumerate_trades({.t = 1, .k = 2, .s = 4, .mode = Mode::general});
  CHECK(out.status == SearchStatus::witnesses_found);
  for (const Trade& w : out.witnesses) {
    CHECK(w.volume() == 4);
    CHECK(validate(to_candidate(w, 1)).ok());
  }
  for (std::size_t i = 0; i < out.witnesses.size(); ++i)
    for (std::size_t j = i + 1; j < out.witnesses.size(); ++j)
      CHECK_FALSE(are_isomorphic(out.witnesses[i], out.witnesses[j]));

  SearchOutcome st = enumerate_trades({.t = 2, .k = 3, .s = 6, .mode = Mode::steiner});
  for (const Trade& w : st.witnesses) {
    CHECK(is_steiner(w));
    // Steiner k = t+1 forces r_x <= s/2
    for (Label x : w.foundation()) CHECK(2 * replication(w, x) <= w.volume());
  }
}

TEST_CASE("pruning rules remove only non-solutions and duplicates") {
  std::vector<SearchSpec> specs = {
      {.t = 1, .k = 2, .s = 3, .mode = Mode::general, .max_foundation = 6},
      {.t = 2, .k = 3, .s = 4, .mode = Mode::steiner},
      {.t = 2, .k = 3, .s = 4, .mode = Mode::general, .max_foundation = 6},
      {.t = 2, .k = 3, .s = 5, .mode = Mode::general},
  };
  for (SearchSpec spec : specs) {
    auto reference = class_keys(enumerate_trades(spec).witnesses);
    for (unsigned rule : {prune_profile, prune_replication, prune_mode, prune_orbit}) {
      SearchSpec relaxed = spec;
      relaxed.prune_mask = prune_all & ~rule;
      CAPTURE(spec.t);
      CAPTURE(spec.s);
      CAPTURE(rule);
      CHECK(class_keys(enumerate_trades(relaxed).witnesses) == reference);
    }
  }
}

TEST_CASE("worker count does not change witnesses or status") {
  for (int workers : {1, 2, 8}) {
    SearchOutcome a =
        enumerate_trades({.t = 2, .k = 3, .s = 4, .worker_count = workers});
    CHECK(a.status == SearchStatus::witnesses_found);
    CHECK(a.witnesses.size() == 1);
    SearchOutcome b = enumerate_trades(
        {.t = 1, .k = 2, .s = 4, .mode = Mode::general, .worker_count = workers});
    CHECK(class_keys(b.witnesses) ==
          class_keys(enumerate_trades({.t = 1, .k = 2, .s = 4, .mode = Mode::general})
                         .witnesses));
  }
}

TEST_CASE("ledger lines carry the full certificate record") {
  std::string path = "test_ledger.tmp";
  std::remove(path.c_str());
  SearchSpec spec{.t = 2, .k = 3, .s = 5};
  SearchOutcome out = enumerate_trades(spec);
  append_ledger(path, spec, out, "");
  std::ifstream f(path);
  std::string line;
  REQUIRE(std::getline(f, line));
  int t, k, s;
  char mode[32], status[32], file[32];
  unsigned long long nodes;
  double secs;
  unsigned long wit;
  int fields = std::sscanf(line.c_str(), "%d %d %d %31s %31s %llu %lf %lu %31s", &t,
                           &k, &s, mode, status, &nodes, &secs, &wit, file);
  CHECK(fields == 9);
  CHECK(t == 2);
  CHECK(std::string(mode) == "steiner");
  CHECK(std::string(status) == "exhausted-empty");
  CHECK(std::string(file) == "-");
  std::remove(path.c_str());
}
