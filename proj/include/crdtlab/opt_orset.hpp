#pragma once

#include <cstddef>
#include <set>

#include "crdtlab/causal.hpp"
#include "crdtlab/tagged.hpp"

/// Optimized Observed-Remove Set: add-wins without tombstones.
///
/// The payload is the set of live (element, dot) triples plus a version
/// vector summarising every dot ever received. A dot that is summarised but
/// absent from the live set has been removed, so a removal needs no tombstone.
/// For each (element, source replica) only the latest add is kept; it
/// subsumes the earlier ones.
///
/// Effects require causal delivery. Duplicate add effects are filtered by the
/// summary; an add that skips ahead of the summary, or a remove naming a dot
/// the summary has not seen, raises DeliveryContractError.
///
/// Payload size is bounded by |elements| * n triples plus an n-entry vector.
namespace crdtlab::opt_orset {

struct State {
  TaggedSet entries;
  VersionVector summary;

  State() = default;
  explicit State(std::size_t replicas) : summary(replicas) {}
  State(TaggedSet e, VersionVector v)
      : entries(std::move(e)), summary(std::move(v)) {}

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

// Must be invoked at `source`; the dot is (summary[source] + 1, source).
AddEffect add_prepare(const State& s, Element e, ReplicaId source);
State add_effect(State s, const AddEffect& eff);

RemoveEffect remove_prepare(const State& s, const Element& e);
State remove_effect(State s, const RemoveEffect& eff);

// Dots summarised by the vector but absent from the live set.
std::set<Dot> removed_dots(const State& s);

bool compare(const State& a, const State& b);
State merge(const State& a, const State& b);

// Throws InvariantViolation when a live dot is not summarised, a dot is
// shared, or two triples share an (element, replica) pair.
void check_invariants(const State& s);

}  // namespace crdtlab::opt_orset
