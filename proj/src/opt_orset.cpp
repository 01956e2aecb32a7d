#include "crdtlab/opt_orset.hpp"

#include <algorithm>
#include <map>

#include "crdtlab/error.hpp"

namespace crdtlab::opt_orset {

namespace {

void check_lengths(const State& a, const State& b) {
  if (a.summary.size() != b.summary.size())
    throw ConfigError("opt-or-set payloads have vectors of length " +
                      std::to_string(a.summary.size()) + " and " +
                      std::to_string(b.summary.size()));
}

// Triples of `from` absent from `other` whose dot `other` has not seen.
void keep_unseen(const TaggedSet& from, const TaggedSet& other,
                 const VersionVector& other_summary, TaggedSet& out) {
  for (const auto& t : from)
    if (!other.contains(t) && !other_summary.contains(t.dot)) out.insert(t);
}

}  // namespace

bool contains(const State& s, const Element& e) {
  auto it = s.entries.lower_bound(Tagged{e, Dot{0, ReplicaId{0}}});
  return it != s.entries.end() && it->element == e;
}

AbstractState elements(const State& s) {
  AbstractState out;
  for (const auto& t : s.entries) out.insert(out.end(), t.element);
  return out;
}

AddEffect add_prepare(const State& s, Element e, ReplicaId source) {
  return AddEffect{std::move(e), Dot{s.summary[source] + 1, source}};
}

State add_effect(State s, const AddEffect& eff) {
  const ReplicaId r = eff.dot.replica;
  const std::uint64_t seen = s.summary[r];
  if (eff.dot.counter <= seen) return s;
  if (eff.dot.counter != seen + 1)
    throw DeliveryContractError("add " + to_string(eff.dot) +
                                " delivered before dot (" +
                                std::to_string(seen + 1) + "," +
                                std::to_string(r.index) + ")");
  // Triples of one (element, replica) are contiguous and counter-ordered.
  auto lo = s.entries.lower_bound(Tagged{eff.element, Dot{0, r}});
  auto hi = lo;
  while (hi != s.entries.end() && hi->element == eff.element &&
         hi->dot.replica == r && hi->dot.counter < eff.dot.counter)
    ++hi;
  s.entries.erase(lo, hi);
  s.summary.advance(r, eff.dot.counter);
  s.entries.insert(Tagged{eff.element, eff.dot});
  return s;
}

RemoveEffect remove_prepare(const State& s, const Element& e) {
  RemoveEffect out;
  for (auto it = s.entries.lower_bound(Tagged{e, Dot{0, ReplicaId{0}}});
       it != s.entries.end() && it->element == e; ++it)
    out.removed.insert(*it);
  return out;
}

State remove_effect(State s, const RemoveEffect& eff) {
  for (const auto& t : eff.removed)
    if (!s.summary.contains(t.dot))
      throw DeliveryContractError("remove of " + t.element + to_string(t.dot) +
                                  " delivered before its add");
  for (const auto& t : eff.removed) s.entries.erase(t);
  return s;
}

std::set<Dot> removed_dots(const State& s) {
  std::set<Dot> live;
  for (const auto& t : s.entries) live.insert(t.dot);
  std::set<Dot> out;
  for (std::uint32_t i = 0; i < s.summary.size(); ++i) {
    const ReplicaId r{i};
    for (std::uint64_t c = 1; c <= s.summary[r]; ++c)
      if (Dot d{c, r}; !live.contains(d)) out.insert(d);
  }
  return out;
}

bool compare(const State& a, const State& b) {
  check_lengths(a, b);
  if (!a.summary.leq(b.summary)) return false;
  const auto ra = removed_dots(a);
  const auto rb = removed_dots(b);
  return std::includes(rb.begin(), rb.end(), ra.begin(), ra.end());
}

State merge(const State& a, const State& b) {
  check_lengths(a, b);
  TaggedSet both;
  std::set_intersection(a.entries.begin(), a.entries.end(), b.entries.begin(),
                        b.entries.end(), std::inserter(both, both.end()));
  keep_unseen(a.entries, b.entries, b.summary, both);
  keep_unseen(b.entries, a.entries, a.summary, both);

  // Within one (element, replica) run only the highest counter survives.
  TaggedSet merged;
  for (auto it = both.begin(); it != both.end(); ++it) {
    auto next = std::next(it);
    if (next != both.end() && next->element == it->element &&
        next->dot.replica == it->dot.replica)
      continue;
    merged.insert(merged.end(), *it);
  }
  return State{std::move(merged), join(a.summary, b.summary)};
}

void check_invariants(const State& s) {
  std::set<Dot> dots;
  std::set<std::pair<Element, ReplicaId>> owners;
  for (const auto& t : s.entries) {
    if (!s.summary.contains(t.dot))
      throw InvariantViolation("opt-or-set triple " + t.element +
                               to_string(t.dot) + " is not summarised by " +
                               to_string(s.summary));
    if (!dots.insert(t.dot).second)
      throw InvariantViolation("opt-or-set dot " + to_string(t.dot) +
                               " tags two elements");
    if (!owners.emplace(t.element, t.dot.replica).second)
      throw InvariantViolation("opt-or-set keeps two triples for (" +
                               t.element + "," +
                               std::to_string(t.dot.replica.index) + ")");
  }
  const std::size_t bound = elements(s).size() * s.summary.size();
  if (s.entries.size() > bound)
    throw InvariantViolation("opt-or-set holds " +
                             std::to_string(s.entries.size()) +
                             " triples, above |elements| * n = " +
                             std::to_string(bound));
}

}  // namespace crdtlab::opt_orset
