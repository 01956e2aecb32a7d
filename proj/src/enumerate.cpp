#include "crdtlab/enumerate.hpp"

#include <array>
#include <vector>

#include "crdtlab/error.hpp"

namespace crdtlab::sim {

namespace {

using Mask = std::uint32_t;

class ScheduleWalker {
 public:
  ScheduleWalker(Design design, Delivery delivery, const ScheduleBounds& b,
                 const std::function<void(const Scenario&)>& visit)
      : b_(b), merges_(supports_merge(design) && b.replicas > 1),
        causal_(delivery == Delivery::causal), visit_(visit) {
    base_.design = design;
    base_.replicas = b.replicas;
    base_.delivery = delivery;
    for (ScenarioEvent tail : {ScenarioEvent{SyncAllEvent{}},
                               ScenarioEvent{CheckEvent{CheckKind::converged}},
                               ScenarioEvent{CheckEvent{CheckKind::oracle}},
                               ScenarioEvent{CheckEvent{CheckKind::permutation}}})
      tail_.push_back(tail);
  }

  std::uint64_t run() {
    for (std::size_t k = 1; k <= b_.max_ops; ++k) {
      target_ops_ = k;
      Node root;
      walk(root);
    }
    return count_;
  }

 private:
  struct Node {
    std::size_t ops = 0;
    std::size_t used = 0;
    std::array<Mask, kMaxEnumeratedReplicas> applied{};
    std::array<Mask, kMaxEnumeratedReplicas> inflight{};
    std::array<Mask, kMaxEnumeratedOps> observed{};
  };

  void walk(const Node& n) {
    bool moved = false;
    const std::size_t R = b_.replicas;

    if (n.ops < target_ops_) {
      const std::size_t elems = std::min(n.used + 1, b_.elements);
      for (std::uint32_t r = 0; r < R; ++r)
        for (auto kind : {UpdateKind::add, UpdateKind::remove})
          for (std::size_t e = 0; e < elems; ++e) {
            moved = true;
            Node next = n;
            const Mask bit = Mask{1} << n.ops;
            next.observed[n.ops] = n.applied[r];
            next.applied[r] |= bit;
            for (std::size_t t = 0; t < R; ++t)
              if (t != r) next.inflight[t] |= bit;
            next.ops = n.ops + 1;
            next.used = std::max(n.used, e + 1);
            events_.push_back(OpEvent{ReplicaId{r}, Update{kind, element_name(e)}});
            walk(next);
            events_.pop_back();
          }
    }

    for (std::size_t m = 0; m < n.ops; ++m) {
      const Mask bit = Mask{1} << m;
      for (std::uint32_t t = 0; t < R; ++t) {
        if (!(n.inflight[t] & bit)) continue;
        if (causal_ && (n.observed[m] & ~n.applied[t])) continue;
        moved = true;
        Node next = n;
        next.inflight[t] &= ~bit;
        next.applied[t] |= bit;
        events_.push_back(DeliverEvent{m, ReplicaId{t}});
        walk(next);
        events_.pop_back();
      }
    }

    if (merges_) {
      for (std::uint32_t f = 0; f < R; ++f)
        for (std::uint32_t t = 0; t < R; ++t) {
          if (f == t || !(n.applied[f] & ~n.applied[t])) continue;
          moved = true;
          Node next = n;
          next.applied[t] |= n.applied[f];
          next.inflight[t] &= ~next.applied[t];
          events_.push_back(MergeEvent{ReplicaId{f}, ReplicaId{t}});
          walk(next);
          events_.pop_back();
        }
    }

    if (!moved) emit();
  }

  void emit() {
    ++count_;
    Scenario sc = base_;
    sc.events.reserve(events_.size() + tail_.size());
    sc.events = events_;
    sc.events.insert(sc.events.end(), tail_.begin(), tail_.end());
    visit_(sc);
  }

  ScheduleBounds b_;
  bool merges_;
  bool causal_;
  const std::function<void(const Scenario&)>& visit_;
  Scenario base_;
  std::vector<ScenarioEvent> tail_;
  std::vector<ScenarioEvent> events_;
  std::size_t target_ops_ = 0;
  std::uint64_t count_ = 0;
};

}  // namespace

std::uint64_t enumerate_schedules(Design design, Delivery delivery,
                                  const ScheduleBounds& bounds,
                                  const std::function<void(const Scenario&)>& visit) {
  if (bounds.max_ops > kMaxEnumeratedOps)
    throw EnumerationLimitError("ops bound " + std::to_string(bounds.max_ops) +
                                " exceeds the enumeration limit of " +
                                std::to_string(kMaxEnumeratedOps));
  if (bounds.replicas > kMaxEnumeratedReplicas)
    throw EnumerationLimitError("replica bound " + std::to_string(bounds.replicas) +
                                " exceeds the enumeration limit of " +
                                std::to_string(kMaxEnumeratedReplicas));
  if (bounds.replicas == 0 || bounds.elements == 0)
    throw ConfigError("enumeration needs at least one replica and one element");
  if (design == Design::opt_or_set && delivery != Delivery::causal)
    throw ConfigError("opt-or-set requires causal delivery");
  return ScheduleWalker(design, delivery, bounds, visit).run();
}

ConformanceSummary run_exhaustive(Design design, Delivery delivery,
                                  const ScheduleBounds& bounds) {
  ConformanceSummary sum;
  sum.design = design;
  sum.delivery = delivery;
  const RunOptions opts{.sample_sizes = false, .check_invariants = true};
  sum.schedules = enumerate_schedules(design, delivery, bounds, [&](const Scenario& sc) {
    const RunReport r = run(sc, opts);
    bool ok = true;
    for (const auto& c : r.checks) {
      if (c.kind == CheckKind::permutation && c.outcome == Outcome::not_applicable)
        ++sum.permutation_not_applicable;
      if (c.outcome != Outcome::fail) continue;
      ok = false;
      switch (c.kind) {
        case CheckKind::oracle: ++sum.oracle_failures; break;
        case CheckKind::converged: ++sum.convergence_failures; break;
        case CheckKind::permutation: ++sum.permutation_failures; break;
      }
    }
    if (ok) {
      ++sum.passed;
    } else {
      ++sum.failed;
      if (!sum.first_failure) sum.first_failure = render_text(r);
    }
  });
  return sum;
}

}  // namespace crdtlab::sim
