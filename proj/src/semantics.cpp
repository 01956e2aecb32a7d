#include "crdtlab/semantics.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "crdtlab/error.hpp"

namespace crdtlab {

AbstractState seq_apply(AbstractState s, const Update& u) {
  if (u.kind == UpdateKind::add)
    s.insert(u.element);
  else
    s.erase(u.element);
  return s;
}

AbstractState seq_fold(std::span<const Update> updates, AbstractState s) {
  for (const auto& u : updates) s = seq_apply(std::move(s), u);
  return s;
}

namespace {

void check_bound(std::size_t n, std::size_t bound) {
  if (n > bound)
    throw EnumerationLimitError(
        "permutation check over " + std::to_string(n) +
        " updates exceeds the enumeration bound of " + std::to_string(bound));
}

Verdict make_verdict(std::optional<AbstractState> agreed,
                     const AbstractState& observed) {
  Verdict v;
  if (!agreed) return v;
  v.applicable = true;
  v.conforms = (*agreed == observed);
  v.expected = std::move(agreed);
  return v;
}

// Depth-first walk over linear extensions of a DAG given as predecessor
// bitmasks. Stops as soon as two extensions disagree.
class ExtensionWalker {
 public:
  ExtensionWalker(std::vector<Update> updates, std::vector<std::uint32_t> preds)
      : updates_(std::move(updates)), preds_(std::move(preds)) {}

  std::optional<AbstractState> run() {
    walk(0, {});
    if (disagree_) return std::nullopt;
    return result_.value_or(AbstractState{});
  }

 private:
  void walk(std::uint32_t placed, const AbstractState& s) {
    if (disagree_) return;
    const auto n = static_cast<std::uint32_t>(updates_.size());
    if (placed == (n == 32 ? ~0u : (1u << n) - 1)) {
      if (!result_)
        result_ = s;
      else if (*result_ != s)
        disagree_ = true;
      return;
    }
    for (std::uint32_t i = 0; i < n && !disagree_; ++i) {
      const std::uint32_t bit = 1u << i;
      if ((placed & bit) || (preds_[i] & ~placed)) continue;
      walk(placed | bit, seq_apply(s, updates_[i]));
    }
  }

  std::vector<Update> updates_;
  std::vector<std::uint32_t> preds_;
  std::optional<AbstractState> result_;
  bool disagree_ = false;
};

}  // namespace

Verdict permutation_equivalence_check(std::span<const Update> updates,
                                      const AbstractState& observed,
                                      std::size_t bound) {
  check_bound(updates.size(), bound);
  std::vector<Update> order(updates.begin(), updates.end());
  std::sort(order.begin(), order.end());
  std::optional<AbstractState> agreed;
  do {
    AbstractState s = seq_fold(order);
    if (!agreed) {
      agreed = std::move(s);
    } else if (*agreed != s) {
      return make_verdict(std::nullopt, observed);
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return make_verdict(std::move(agreed), observed);
}

Verdict permutation_equivalence_check(const History& h,
                                      const AbstractState& observed,
                                      std::size_t bound) {
  check_bound(h.size(), std::min<std::size_t>(bound, 32));
  std::map<EventId, std::uint32_t> pos;
  for (const auto& ev : h.events())
    pos.emplace(ev.id, static_cast<std::uint32_t>(pos.size()));

  std::vector<std::uint32_t> preds;
  std::vector<Update> updates;
  for (const auto& ev : h.events()) {
    std::uint32_t mask = 0;
    for (const auto& o : ev.observed)
      if (auto it = pos.find(o); it != pos.end()) mask |= 1u << it->second;
    preds.push_back(mask);
    updates.push_back(ev.update);
  }
  return make_verdict(ExtensionWalker(std::move(updates), std::move(preds)).run(),
                      observed);
}

namespace {

template <typename Cancels>
AbstractState oracle_with(const History& h, Cancels cancels) {
  AbstractState out;
  for (const auto& a : h.events()) {
    if (a.update.kind != UpdateKind::add || out.contains(a.update.element))
      continue;
    bool cancelled = false;
    for (const auto& r : h.events()) {
      if (r.update.kind == UpdateKind::remove &&
          r.update.element == a.update.element && cancels(a, r)) {
        cancelled = true;
        break;
      }
    }
    if (!cancelled) out.insert(a.update.element);
  }
  return out;
}

}  // namespace

AbstractState add_wins_oracle(const History& h) {
  return oracle_with(h, [](const UpdateEvent& a, const UpdateEvent& r) {
    return r.observed.contains(a.id);
  });
}

AbstractState add_wins_oracle_hb(const History& h) {
  return oracle_with(h, [&h](const UpdateEvent& a, const UpdateEvent& r) {
    return h.happened_before(a.id, r.id);
  });
}

std::string oracle_applicable_note(std::span<const Update> updates) {
  if (updates.empty()) return "empty history, S = {}";
  std::map<Element, std::pair<bool, bool>> seen;
  for (const auto& u : updates) {
    auto& [added, removed] = seen[u.element];
    (u.kind == UpdateKind::add ? added : removed) = true;
  }
  std::vector<Element> conflicted;
  for (const auto& [e, flags] : seen)
    if (flags.first && flags.second) conflicted.push_back(e);
  if (conflicted.empty()) return "no conflict";
  std::string list;
  for (const auto& e : conflicted) list += (list.empty() ? "" : ", ") + e;
  return "add-wins row of the resolution table: concurrent add and remove of " +
         list + " leave the element present";
}

}  // namespace crdtlab
