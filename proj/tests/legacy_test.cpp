#include <gtest/gtest.h>

#include "crdtlab/error.hpp"
#include "crdtlab/legacy.hpp"
#include "crdtlab/semantics.hpp"

using namespace crdtlab;
using namespace crdtlab::legacy;

namespace {

VersionVector vv(std::vector<std::uint64_t> e) { return VersionVector(std::move(e)); }

// Write at replica r based on the current read.
CartState write_at(const CartState& s, AbstractState value, std::uint32_t r) {
  VersionVector ctx = cart_context(s, 2);
  ctx.increment(ReplicaId{r});
  return cart_write(s, std::move(value), std::move(ctx));
}

}  // namespace

TEST(Cart, ReadIsTheUnionOfSiblings) {
  EXPECT_EQ(cart_read(CartState{{{{"a"}, vv({1, 0})}, {{"a", "b"}, vv({0, 1})}}}),
            (AbstractState{"a", "b"}));
  EXPECT_EQ(cart_read(CartState{{{{"a"}, vv({1, 0})}}}), (AbstractState{"a"}));
  EXPECT_EQ(cart_read(CartState{}), AbstractState{});
}

TEST(Cart, WriteReplacesDominatedSiblings) {
  const CartState s = write_at(CartState{}, {"x", "y"}, 0);
  const CartState t = write_at(s, {"x"}, 0);
  ASSERT_EQ(t.siblings.size(), 1u);
  EXPECT_EQ(t.siblings[0].value, (AbstractState{"x"}));
}

TEST(Cart, ConcurrentWritesBecomeSiblings) {
  const CartState a = write_at(CartState{}, {"x"}, 0);
  const CartState b = write_at(CartState{}, {"x", "y", "z"}, 1);
  const CartState m = cart_merge(a, b);
  EXPECT_EQ(m.siblings.size(), 2u);
  EXPECT_EQ(cart_read(m), (AbstractState{"x", "y", "z"}));
  EXPECT_NO_THROW(check_invariants(m));
}

TEST(Cart, RemoveIsUndoneByConcurrentWrite) {
  const CartState base = write_at(CartState{}, {"x", "y"}, 0);
  const CartState a = write_at(base, {"x"}, 0);
  const CartState b = write_at(base, {"x", "y", "z"}, 1);
  EXPECT_EQ(cart_read(cart_merge(a, b)), (AbstractState{"x", "y", "z"}));

  // Add-wins keeps the remove of y, which saw the add of y.
  History h(2);
  const auto ax = h.record(ReplicaId{0}, add("x")).id;
  const auto ay = h.record(ReplicaId{0}, add("y")).id;
  h.record(ReplicaId{0}, crdtlab::remove("y"));
  h.record(ReplicaId{1}, add("z"), {ax, ay});
  EXPECT_EQ(add_wins_oracle(h), (AbstractState{"x", "z"}));
}

TEST(Cart, MergeIsASemilattice) {
  const CartState base = write_at(CartState{}, {"x"}, 0);
  const std::vector<CartState> states = {
      CartState{}, base, write_at(base, {"y"}, 0), write_at(base, {"z"}, 1),
      cart_merge(write_at(base, {"y"}, 0), write_at(base, {"z"}, 1))};
  for (const auto& a : states) {
    EXPECT_EQ(cart_merge(a, a), a);
    for (const auto& b : states) {
      EXPECT_EQ(cart_merge(a, b), cart_merge(b, a));
      for (const auto& c : states)
        EXPECT_EQ(cart_merge(cart_merge(a, b), c), cart_merge(a, cart_merge(b, c)));
    }
  }
}

TEST(Cart, InvariantRejectsDominatedSibling) {
  EXPECT_THROW(check_invariants(CartState{{{{"a"}, vv({1, 0})}, {{"b"}, vv({2, 0})}}}),
               InvariantViolation);
}

TEST(CSet, AddOnceEverywhere) {
  CSetState s;
  s = cset_deliver(s, cset_add(s, "e"));
  EXPECT_EQ(s.counts.at("e"), 1);
  EXPECT_TRUE(cset_contains(s, "e"));
  EXPECT_EQ(cset_elements(s), (AbstractState{"e"}));
}

TEST(CSet, ConcurrentRemovesCancelALaterAdd) {
  CSetState a, b;
  const auto add1 = cset_add(a, "e");
  a = cset_deliver(a, add1);
  b = cset_deliver(b, add1);
  const auto ra = cset_remove(a, "e");
  const auto rb = cset_remove(b, "e");
  a = cset_deliver(cset_deliver(a, ra), rb);
  b = cset_deliver(cset_deliver(b, rb), ra);
  EXPECT_EQ(a.counts.at("e"), -1);
  EXPECT_EQ(a, b);
  const auto add2 = cset_add(a, "e");
  a = cset_deliver(a, add2);
  b = cset_deliver(b, add2);
  EXPECT_EQ(a.counts.at("e"), 0);
  EXPECT_FALSE(cset_contains(a, "e"));
  EXPECT_EQ(a, b);

  History h(2);
  const auto x = h.record(ReplicaId{0}, add("e")).id;
  const auto y = h.record(ReplicaId{0}, crdtlab::remove("e")).id;
  const auto z = h.record(ReplicaId{1}, crdtlab::remove("e"), {x}).id;
  h.record(ReplicaId{0}, add("e"), {y, z});
  EXPECT_EQ(add_wins_oracle(h), (AbstractState{"e"}));
  const Verdict v = permutation_equivalence_check(h, cset_elements(a));
  EXPECT_TRUE(v.applicable);
  EXPECT_FALSE(v.conforms);
}

TEST(CSet, DeltasCommute) {
  const std::vector<CSetDelta> ds = {{"e", 1}, {"e", -1}, {"f", 1}, {"e", -1}};
  std::vector<std::size_t> order = {0, 1, 2, 3};
  std::optional<CSetState> first;
  do {
    CSetState s;
    for (auto i : order) s = cset_deliver(s, ds[i]);
    if (!first) first = s;
    EXPECT_EQ(s, *first);
  } while (std::next_permutation(order.begin(), order.end()));
}
