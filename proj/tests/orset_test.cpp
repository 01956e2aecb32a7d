#include <gtest/gtest.h>

#include <algorithm>
#include <optional>
#include <variant>

#include "crdtlab/error.hpp"
#include "crdtlab/orset.hpp"
#include "reachable.hpp"

using namespace crdtlab;
using namespace crdtlab::orset;

namespace {

Dot d(std::uint64_t c, std::uint32_t r = 0) { return Dot{c, ReplicaId{r}}; }
Tagged p(const char* e, std::uint64_t c, std::uint32_t r = 0) { return Tagged{e, d(c, r)}; }

// Every payload over a fixed universe of three pairs: each pair is absent,
// live or tombstoned.
std::vector<State> all_states(const std::vector<Tagged>& universe) {
  std::vector<State> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < universe.size(); ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    State s;
    std::size_t c = code;
    for (const auto& t : universe) {
      if (c % 3 == 1) s.entries.insert(t);
      if (c % 3 == 2) s.tombstones.insert(t);
      c /= 3;
    }
    out.push_back(s);
  }
  return out;
}

std::vector<std::vector<Tagged>> universes() {
  // Three dots, each bound to one of two elements; dot 1 always tags "a".
  std::vector<std::vector<Tagged>> out;
  for (const char* e2 : {"a", "b"})
    for (const char* e3 : {"a", "b"}) out.push_back({p("a", 1), p(e2, 2), p(e3, 3)});
  return out;
}

using Effect = std::variant<AddEffect, RemoveEffect>;

State apply(State s, const Effect& e) {
  if (auto* a = std::get_if<AddEffect>(&e)) return add_effect(std::move(s), *a);
  return remove_effect(std::move(s), std::get<RemoveEffect>(e));
}

}  // namespace

TEST(OrSet, ContainsIsExistentialOverLivePairs) {
  EXPECT_TRUE(contains(State{{p("a", 1)}, {}}, "a"));
  EXPECT_FALSE(contains(State{{}, {p("a", 1)}}, "a"));
  EXPECT_TRUE(contains(State{{p("a", 1), p("a", 2)}, {}}, "a"));
}

TEST(OrSet, ElementsProjectsLivePairs) {
  EXPECT_EQ(elements(State{{p("a", 1), p("b", 2)}, {}}), (AbstractState{"a", "b"}));
  EXPECT_EQ(elements(State{}), AbstractState{});
  EXPECT_EQ(elements(State{{p("a", 1), p("a", 2)}, {}}), (AbstractState{"a"}));
}

TEST(OrSet, AddPrepareMintsFreshDotsWithoutMutating) {
  const State s{{p("b", 7)}, {p("c", 8)}};
  const State before = s;
  DotGenerator ids(ReplicaId{1});
  const AddEffect first = add_prepare(s, "a", ids);
  const AddEffect second = add_prepare(s, "a", ids);
  EXPECT_EQ(first.element, "a");
  EXPECT_NE(first.dot, second.dot);
  EXPECT_EQ(s, before);
}

TEST(OrSet, AddEffect) {
  EXPECT_EQ(add_effect(State{}, AddEffect{"a", d(1)}), (State{{p("a", 1)}, {}}));
  // A tombstone shields the pair.
  EXPECT_EQ(add_effect(State{{}, {p("a", 1)}}, AddEffect{"a", d(1)}),
            (State{{}, {p("a", 1)}}));
  const State once = add_effect(State{}, AddEffect{"a", d(1)});
  EXPECT_EQ(add_effect(once, AddEffect{"a", d(1)}), once);
}

TEST(OrSet, RemovePrepareCollectsObservedPairs) {
  const State s{{p("a", 1), p("a", 2), p("b", 3)}, {}};
  EXPECT_EQ(remove_prepare(s, "a").removed, (TaggedSet{p("a", 1), p("a", 2)}));
  EXPECT_TRUE(remove_prepare(State{}, "a").removed.empty());
  EXPECT_TRUE(remove_prepare(State{{p("b", 3)}, {}}, "a").removed.empty());
}

TEST(OrSet, RemoveEffect) {
  EXPECT_EQ(remove_effect(State{{p("a", 1)}, {}}, RemoveEffect{{p("a", 1)}}),
            (State{{}, {p("a", 1)}}));
  // A concurrent re-add is not in R and survives.
  const State s = remove_effect(State{{p("a", 2)}, {}}, RemoveEffect{{p("a", 1)}});
  EXPECT_EQ(s, (State{{p("a", 2)}, {p("a", 1)}}));
  EXPECT_TRUE(contains(s, "a"));
}

TEST(OrSet, RemoveBeforeAddLeavesElementAbsent) {
  State s = remove_effect(State{}, RemoveEffect{{p("a", 1)}});
  s = add_effect(std::move(s), AddEffect{"a", d(1)});
  EXPECT_FALSE(contains(s, "a"));
  EXPECT_EQ(s, (State{{}, {p("a", 1)}}));
}

TEST(OrSet, Compare) {
  const State a{{p("a", 1)}, {}};
  const State b{{}, {p("a", 1)}};
  EXPECT_TRUE(compare(State{}, a));
  EXPECT_TRUE(compare(State{}, b));
  EXPECT_TRUE(compare(a, b));
  EXPECT_FALSE(compare(b, a));
}

TEST(OrSet, Merge) {
  EXPECT_EQ(merge(State{{p("a", 1)}, {}}, State{{}, {p("a", 1)}}), (State{{}, {p("a", 1)}}));
  EXPECT_EQ(merge(State{{p("a", 1)}, {}}, State{}), (State{{p("a", 1)}, {}}));
  const State s{{p("a", 2)}, {p("a", 1)}};
  EXPECT_EQ(merge(s, s), s);
}

TEST(OrSet, InvariantCheckRejectsOverlap) {
  EXPECT_THROW(check_invariants(State{{p("a", 1)}, {p("a", 1)}}), InvariantViolation);
  EXPECT_THROW(check_invariants(State{{p("a", 1), p("b", 1)}, {}}), InvariantViolation);
  EXPECT_NO_THROW(check_invariants(State{{p("a", 2)}, {p("a", 1)}}));
}

TEST(OrSet, MergeIsAJoinSemilatticeOnSmallStates) {
  for (const auto& u : universes()) {
    const auto states = all_states(u);
    for (const auto& a : states) {
      EXPECT_EQ(merge(a, a), a);
      for (const auto& b : states) {
        const State ab = merge(a, b);
        EXPECT_NO_THROW(check_invariants(ab));
        EXPECT_EQ(ab, merge(b, a));
        EXPECT_TRUE(compare(a, ab));
        EXPECT_TRUE(compare(b, ab));
        // compare is exactly the order merge induces
        EXPECT_EQ(compare(a, b), ab == b);
        for (const auto& c : states) EXPECT_EQ(merge(ab, c), merge(a, merge(b, c)));
      }
    }
  }
}

TEST(OrSet, EffectsAreIdempotentAndCommute) {
  const std::vector<Effect> pool = {
      AddEffect{"a", d(1)},           AddEffect{"a", d(2)},
      AddEffect{"b", d(3)},           RemoveEffect{{p("a", 1)}},
      RemoveEffect{{p("a", 1), p("a", 2)}}, RemoveEffect{{p("b", 3)}}};
  std::vector<std::size_t> pick(4);
  for (std::size_t code = 0; code < 6 * 6 * 6 * 6; ++code) {
    std::size_t c = code;
    for (auto& i : pick) {
      i = c % 6;
      c /= 6;
    }
    std::vector<std::size_t> order = pick;
    std::sort(order.begin(), order.end());
    std::optional<State> first;
    do {
      State s;
      for (std::size_t i : order) s = apply(std::move(s), pool[i]);
      EXPECT_NO_THROW(check_invariants(s));
      if (!first)
        first = s;
      else
        EXPECT_EQ(s, *first);
      EXPECT_EQ(apply(s, pool[order.back()]), s);
    } while (std::next_permutation(order.begin(), order.end()));
  }
}

TEST(OrSet, ReachableStatesFormASemilattice) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto states = walks::random_walk<walks::OrSetDesign>(
        {}, seed, [](const State& before, const State& after) {
          EXPECT_TRUE(compare(before, after));
        });
    const State& a = states[seed % states.size()];
    const State& b = states[(seed * 7 + 3) % states.size()];
    const State& c = states.back();
    EXPECT_EQ(merge(a, a), a);
    EXPECT_EQ(merge(a, b), merge(b, a));
    EXPECT_EQ(merge(merge(a, b), c), merge(a, merge(b, c)));
    EXPECT_TRUE(compare(a, merge(a, b)));
  }
}

TEST(OrSet, PayloadCountsEveryAddEver) {
  // Tagged pairs only move from E to T, so |E| + |T| counts distinct adds seen.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::size_t grown = 0;
    walks::random_walk<walks::OrSetDesign>(
        {3, 40, 2}, seed, [&](const State& before, const State& after) {
          EXPECT_GE(after.entries.size() + after.tombstones.size(),
                    before.entries.size() + before.tombstones.size());
          ++grown;
        });
    EXPECT_GT(grown, 0u);
  }
}
