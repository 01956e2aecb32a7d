#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "crdtlab/sim.hpp"

namespace crdtlab::sim {

inline constexpr std::size_t kMaxEnumeratedOps = 5;
inline constexpr std::size_t kMaxEnumeratedReplicas = 3;

struct ScheduleBounds {
  std::size_t max_ops = 2;   // scenarios with 1..max_ops updates
  std::size_t replicas = 2;  // exactly this many replicas
  std::size_t elements = 2;  // element universe size
};

/// Calls `visit` once per distinct schedule, in a fixed order.
///
/// A schedule is a sequence of ops, deliveries and merges that ends once
/// every message has reached every replica, followed by sync-all and
/// converged, oracle and permutation checks. Elements are introduced in
/// first-use order (the first element named is always "a"), which removes
/// schedules that differ only by renaming. Deliveries respect `delivery`.
/// Merges are generated only for designs that have one and only when they
/// bring the target something new; a message whose update already reached the
/// target through a merge is not delivered again.
///
/// Returns the number of schedules. Throws EnumerationLimitError above
/// kMaxEnumeratedOps or kMaxEnumeratedReplicas.
std::uint64_t enumerate_schedules(Design design, Delivery delivery,
                                  const ScheduleBounds& bounds,
                                  const std::function<void(const Scenario&)>& visit);

struct ConformanceSummary {
  Design design = Design::or_set;
  Delivery delivery = Delivery::causal;
  std::uint64_t schedules = 0;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  std::uint64_t oracle_failures = 0;
  std::uint64_t convergence_failures = 0;
  std::uint64_t permutation_failures = 0;
  std::uint64_t permutation_not_applicable = 0;
  std::optional<std::string> first_failure;  // rendered report of the first failing run
};

// Runs every enumerated schedule through the simulator.
ConformanceSummary run_exhaustive(Design design, Delivery delivery,
                                  const ScheduleBounds& bounds);

}  // namespace crdtlab::sim
