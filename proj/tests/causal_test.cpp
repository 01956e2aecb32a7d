#include <gtest/gtest.h>

#include <random>
#include <set>

#include "crdtlab/causal.hpp"
#include "crdtlab/error.hpp"

using namespace crdtlab;

namespace {

ReplicaId R(std::uint32_t i) { return ReplicaId{i}; }

VersionVector vv(std::vector<std::uint64_t> e) { return VersionVector(std::move(e)); }

// Every vector of length 2 with entries in 0..3.
std::vector<VersionVector> small_vectors() {
  std::vector<VersionVector> out;
  for (std::uint64_t a = 0; a <= 3; ++a)
    for (std::uint64_t b = 0; b <= 3; ++b) out.push_back(vv({a, b}));
  return out;
}

}  // namespace

TEST(VersionVector, IncrementMintsNextDot) {
  auto v = vv({0, 0});
  EXPECT_EQ(v.increment(R(0)), (Dot{1, R(0)}));
  EXPECT_EQ(v, vv({1, 0}));

  auto w = vv({3, 7});
  EXPECT_EQ(w.increment(R(1)), (Dot{8, R(1)}));
  EXPECT_EQ(w, vv({3, 8}));
}

TEST(VersionVector, IncrementRejectsUnknownReplica) {
  auto v = vv({3, 7});
  EXPECT_THROW(v.increment(R(5)), InvalidReplicaError);
  EXPECT_EQ(v, vv({3, 7}));
}

TEST(VersionVector, Contains) {
  EXPECT_TRUE(vv({2, 0}).contains(Dot{1, R(0)}));
  EXPECT_FALSE(vv({2, 0}).contains(Dot{3, R(0)}));
  EXPECT_TRUE(vv({2, 5}).contains(Dot{5, R(1)}));
  EXPECT_THROW(vv({2, 5}).contains(Dot{1, R(2)}), InvalidReplicaError);
}

TEST(VersionVector, MergeIsPointwiseMax) {
  EXPECT_EQ(join(vv({1, 4}), vv({3, 2})), vv({3, 4}));
  EXPECT_EQ(join(vv({0, 0}), vv({0, 0})), vv({0, 0}));
  EXPECT_EQ(join(vv({2}), vv({2})), vv({2}));
  EXPECT_THROW(join(vv({1}), vv({1, 2})), ConfigError);
}

TEST(VersionVector, Leq) {
  EXPECT_TRUE(vv({1, 2}).leq(vv({1, 3})));
  EXPECT_FALSE(vv({2, 1}).leq(vv({1, 3})));
  EXPECT_TRUE(vv({0, 0}).leq(vv({0, 0})));
  EXPECT_THROW(vv({0}).leq(vv({0, 0})), ConfigError);
}

TEST(VersionVector, MergeIsASemilatticeOnSmallVectors) {
  const auto all = small_vectors();
  for (const auto& a : all) {
    EXPECT_EQ(join(a, a), a);
    for (const auto& b : all) {
      EXPECT_EQ(join(a, b), join(b, a));
      EXPECT_TRUE(a.leq(join(a, b)));
      for (const auto& c : all) EXPECT_EQ(join(join(a, b), c), join(a, join(b, c)));
    }
  }
}

TEST(VersionVector, LeqIsAPartialOrder) {
  const auto all = small_vectors();
  for (const auto& a : all) {
    EXPECT_TRUE(a.leq(a));
    for (const auto& b : all) {
      if (a.leq(b) && b.leq(a)) {
        EXPECT_EQ(a, b);
      }
      for (const auto& c : all)
        if (a.leq(b) && b.leq(c)) {
          EXPECT_TRUE(a.leq(c));
        }
    }
  }
}

TEST(VersionVector, OwnIncrementsNeverRepeat) {
  VersionVector v(3);
  std::set<Dot> seen;
  for (int i = 0; i < 100; ++i) {
    v.advance(R(1), v[R(1)] + (i % 3));  // foreign progress must not matter
    EXPECT_TRUE(seen.insert(v.increment(R(0))).second);
  }
}

TEST(History, ProgramOrderIsHappensBefore) {
  History h(2);
  const auto a = h.record(R(0), add("e")).id;
  const auto b = h.record(R(0), crdtlab::remove("e")).id;
  EXPECT_TRUE(h.happened_before(a, b));
  EXPECT_FALSE(h.happened_before(b, a));
}

TEST(History, UndeliveredEventsAreConcurrent) {
  History h(2);
  const auto a = h.record(R(0), add("e")).id;
  const auto b = h.record(R(1), add("f")).id;
  EXPECT_FALSE(h.happened_before(a, b));
  EXPECT_FALSE(h.happened_before(b, a));
}

TEST(History, ObservationEdgesAreTransitive) {
  History h(3);
  const auto a = h.record(R(0), add("e")).id;
  const auto b = h.record(R(1), add("f"), {a}).id;
  const auto c = h.record(R(2), crdtlab::remove("e"), {b}).id;
  EXPECT_TRUE(h.happened_before(a, b));
  EXPECT_TRUE(h.happened_before(a, c));
  EXPECT_FALSE(h.observation_closed());
}

TEST(History, UnknownIdsAreLookupErrors) {
  History h(1);
  const auto a = h.record(R(0), add("e")).id;
  EXPECT_THROW(h.happened_before(a, Dot{9, R(0)}), LookupError);
  EXPECT_THROW(h.record(R(0), add("e"), {Dot{4, R(0)}}), LookupError);
  EXPECT_THROW(h.record(R(3), add("e")), InvalidReplicaError);
}

TEST(History, RestrictionDropsForeignObservations) {
  History h(2);
  const auto a = h.record(R(0), add("e")).id;
  const auto b = h.record(R(1), add("f"), {a}).id;
  const History sub = h.restricted_to({b});
  ASSERT_EQ(sub.size(), 1u);
  EXPECT_TRUE(sub.at(b).observed.empty());
}

TEST(History, HappensBeforeIsAStrictPartialOrderOnRandomHistories) {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 200; ++round) {
    History h(3);
    std::vector<EventId> ids;
    for (int i = 0; i < 8; ++i) {
      std::set<EventId> obs;
      for (const auto& id : ids)
        if (rng() % 3 == 0) obs.insert(id);
      ids.push_back(h.record(R(rng() % 3), add("x"), obs).id);
    }
    for (const auto& a : ids) {
      EXPECT_FALSE(h.happened_before(a, a));
      for (const auto& b : ids) {
        if (h.happened_before(a, b)) {
          EXPECT_FALSE(h.happened_before(b, a));
        }
        for (const auto& c : ids)
          if (h.happened_before(a, b) && h.happened_before(b, c)) {
            EXPECT_TRUE(h.happened_before(a, c));
          }
      }
    }
  }
}
