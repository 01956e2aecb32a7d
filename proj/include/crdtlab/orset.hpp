#pragma once

#include <cstddef>

#include "crdtlab/causal.hpp"
#include "crdtlab/tagged.hpp"

/// Observed-Remove Set with tombstones.
///
/// Every add mints a fresh (element, dot) pair; a remove moves the pairs its
/// source observed into the tombstone set. Effects are idempotent and commute,
/// so they may be delivered in any order and more than once. A tombstone
/// shields the pair from an add effect that arrives after its remove.
///
/// A production variant would keep only a mark bit for tombstoned pairs and
/// drop any per-pair payload; here tombstones keep the full pair.
namespace crdtlab::orset {

struct State {
  TaggedSet entries;
  TaggedSet tombstones;

  friend bool operator==(const State&, const State&) = default;
};

struct AddEffect {
  Element element;
  Dot dot;
};

struct RemoveEffect {
  TaggedSet removed;
};

bool contains(const State& s, const Element& e);
AbstractState elements(const State& s);

AddEffect add_prepare(const State& s, Element e, DotGenerator& ids);
State add_effect(State s, const AddEffect& eff);

RemoveEffect remove_prepare(const State& s, const Element& e);
State remove_effect(State s, const RemoveEffect& eff);

// A <= B in the payload order.
bool compare(const State& a, const State& b);
State merge(const State& a, const State& b);

// Throws InvariantViolation if entries and tombstones overlap or a dot is
// paired with two different elements.
void check_invariants(const State& s);

// Number of distinct pairs held, live or tombstoned.
inline std::size_t payload_size(const State& s) {
  return s.entries.size() + s.tombstones.size();
}

}  // namespace crdtlab::orset
