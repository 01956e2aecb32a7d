#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "crdtlab/causal.hpp"

// Two replicated set designs that converge but violate add-wins semantics.
// They exist so the checkers have something to catch.
namespace crdtlab::legacy {

// Dynamo-style shopping cart: a multi-value register holding whole sets.
// Concurrent writes survive as siblings and a read returns their union, so a
// remove concurrent with any other write can be undone.

struct Sibling {
  AbstractState value;
  VersionVector clock;

  friend bool operator==(const Sibling&, const Sibling&) = default;
  friend auto operator<=>(const Sibling&, const Sibling&) = default;
};

struct CartState {
  std::vector<Sibling> siblings;  // sorted, pairwise concurrent

  friend bool operator==(const CartState&, const CartState&) = default;
};

AbstractState cart_read(const CartState& s);

// Join of every sibling clock: the context a write based on this read carries.
VersionVector cart_context(const CartState& s, std::size_t replicas);

// `clock` is the read context already incremented at the writer. Replaces
// every sibling it dominates.
CartState cart_write(CartState s, AbstractState value, VersionVector clock);

// Keeps the maximal siblings of both sides.
CartState cart_merge(const CartState& a, const CartState& b);

void check_invariants(const CartState& s);

// C-Set: per-element count of adds minus removes; present iff positive.
// Deltas must be delivered at most once.

struct CSetState {
  std::map<Element, std::int64_t> counts;

  friend bool operator==(const CSetState&, const CSetState&) = default;
};

struct CSetDelta {
  Element element;
  std::int64_t delta = 0;
};

CSetDelta cset_add(const CSetState& s, Element e);
CSetDelta cset_remove(const CSetState& s, Element e);
CSetState cset_deliver(CSetState s, const CSetDelta& d);
bool cset_contains(const CSetState& s, const Element& e);
AbstractState cset_elements(const CSetState& s);

}  // namespace crdtlab::legacy
