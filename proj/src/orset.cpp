#include "crdtlab/orset.hpp"

#include <algorithm>
#include <map>

#include "crdtlab/error.hpp"

namespace crdtlab::orset {

namespace {

auto range_of(const TaggedSet& s, const Element& e) {
  auto lo = s.lower_bound(Tagged{e, Dot{0, ReplicaId{0}}});
  auto hi = lo;
  while (hi != s.end() && hi->element == e) ++hi;
  return std::pair{lo, hi};
}

TaggedSet minus(const TaggedSet& a, const TaggedSet& b) {
  TaggedSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.end()));
  return out;
}

}  // namespace

bool contains(const State& s, const Element& e) {
  auto [lo, hi] = range_of(s.entries, e);
  return lo != hi;
}

AbstractState elements(const State& s) {
  AbstractState out;
  for (const auto& t : s.entries) out.insert(out.end(), t.element);
  return out;
}

AddEffect add_prepare(const State&, Element e, DotGenerator& ids) {
  return AddEffect{std::move(e), ids.next()};
}

State add_effect(State s, const AddEffect& eff) {
  Tagged pair{eff.element, eff.dot};
  if (!s.tombstones.contains(pair)) s.entries.insert(std::move(pair));
  return s;
}

RemoveEffect remove_prepare(const State& s, const Element& e) {
  auto [lo, hi] = range_of(s.entries, e);
  return RemoveEffect{TaggedSet(lo, hi)};
}

State remove_effect(State s, const RemoveEffect& eff) {
  for (const auto& pair : eff.removed) {
    s.entries.erase(pair);
    s.tombstones.insert(pair);
  }
  return s;
}

bool compare(const State& a, const State& b) {
  auto in_b = [&b](const Tagged& t) {
    return b.entries.contains(t) || b.tombstones.contains(t);
  };
  return std::all_of(a.entries.begin(), a.entries.end(), in_b) &&
         std::includes(b.tombstones.begin(), b.tombstones.end(),
                       a.tombstones.begin(), a.tombstones.end());
}

State merge(const State& a, const State& b) {
  State out;
  out.entries = minus(a.entries, b.tombstones);
  out.entries.merge(minus(b.entries, a.tombstones));
  out.tombstones = a.tombstones;
  out.tombstones.insert(b.tombstones.begin(), b.tombstones.end());
  return out;
}

void check_invariants(const State& s) {
  std::map<Dot, const Element*> owner;
  for (const TaggedSet* part : {&s.entries, &s.tombstones}) {
    for (const auto& t : *part) {
      auto [it, fresh] = owner.emplace(t.dot, &t.element);
      if (fresh) continue;
      if (*it->second == t.element)
        throw InvariantViolation("or-set pair (" + t.element + "," +
                                 to_string(t.dot) +
                                 ") is both live and tombstoned");
      throw InvariantViolation("or-set dot " + to_string(t.dot) +
                               " tags two elements");
    }
  }
}

}  // namespace crdtlab::orset
