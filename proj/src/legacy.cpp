#include "crdtlab/legacy.hpp"

#include <algorithm>

#include "crdtlab/error.hpp"

namespace crdtlab::legacy {

namespace {

bool strictly_below(const VersionVector& a, const VersionVector& b) {
  return a != b && a.leq(b);
}

CartState normalize(std::vector<Sibling> all) {
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  CartState out;
  for (const auto& s : all) {
    bool dominated = std::any_of(all.begin(), all.end(), [&](const Sibling& o) {
      return strictly_below(s.clock, o.clock);
    });
    if (!dominated) out.siblings.push_back(s);
  }
  return out;
}

}  // namespace

AbstractState cart_read(const CartState& s) {
  AbstractState out;
  for (const auto& sib : s.siblings) out.insert(sib.value.begin(), sib.value.end());
  return out;
}

VersionVector cart_context(const CartState& s, std::size_t replicas) {
  VersionVector ctx(replicas);
  for (const auto& sib : s.siblings) ctx.merge(sib.clock);
  return ctx;
}

CartState cart_write(CartState s, AbstractState value, VersionVector clock) {
  std::erase_if(s.siblings,
                [&](const Sibling& sib) { return sib.clock.leq(clock); });
  s.siblings.push_back(Sibling{std::move(value), std::move(clock)});
  return normalize(std::move(s.siblings));
}

CartState cart_merge(const CartState& a, const CartState& b) {
  std::vector<Sibling> all = a.siblings;
  all.insert(all.end(), b.siblings.begin(), b.siblings.end());
  return normalize(std::move(all));
}

void check_invariants(const CartState& s) {
  for (const auto& x : s.siblings)
    for (const auto& y : s.siblings)
      if (strictly_below(x.clock, y.clock))
        throw InvariantViolation("cart sibling " + to_string(x.clock) +
                                 " is dominated by " + to_string(y.clock));
}

CSetDelta cset_add(const CSetState&, Element e) {
  return CSetDelta{std::move(e), +1};
}

CSetDelta cset_remove(const CSetState&, Element e) {
  return CSetDelta{std::move(e), -1};
}

CSetState cset_deliver(CSetState s, const CSetDelta& d) {
  s.counts[d.element] += d.delta;
  return s;
}

bool cset_contains(const CSetState& s, const Element& e) {
  auto it = s.counts.find(e);
  return it != s.counts.end() && it->second > 0;
}

AbstractState cset_elements(const CSetState& s) {
  AbstractState out;
  for (const auto& [e, n] : s.counts)
    if (n > 0) out.insert(out.end(), e);
  return out;
}

}  // namespace crdtlab::legacy
