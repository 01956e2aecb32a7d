#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "crdtlab/causal.hpp"

namespace crdtlab {

inline constexpr std::size_t kDefaultPermutationBound = 8;

/// Outcome of a permutation-equivalence check.
///
/// `applicable` is true when every admissible sequential order of the updates
/// ends in the same abstract state; that state is then `expected`, and
/// `conforms` tells whether the observed state matches it. When the orders
/// disagree the check makes no judgement and `conforms` is false.
struct Verdict {
  bool applicable = false;
  std::optional<AbstractState> expected;
  bool conforms = false;
};

// Sequential set semantics. Removing an absent element is a no-op.
AbstractState seq_apply(AbstractState s, const Update& u);

AbstractState seq_fold(std::span<const Update> updates, AbstractState s = {});

// Enumerates every total order of the multiset `updates`.
// Throws EnumerationLimitError when there are more than `bound` updates.
Verdict permutation_equivalence_check(std::span<const Update> updates,
                                      const AbstractState& observed,
                                      std::size_t bound = kDefaultPermutationBound);

// Same, but only over the total orders that extend the history's
// happens-before relation. Updates related by happens-before were not
// concurrent, so only the concurrent ones are permuted.
Verdict permutation_equivalence_check(const History& h,
                                      const AbstractState& observed,
                                      std::size_t bound = kDefaultPermutationBound);

/// Add-wins reference semantics: e is present iff some add(e) was not
/// observed by any remove(e). A remove cancels exactly the adds that were
/// visible at its source when it was prepared.
AbstractState add_wins_oracle(const History& h);

// Same rule, with "observed" widened to the full happens-before closure.
// Agrees with add_wins_oracle on observation-closed histories.
AbstractState add_wins_oracle_hb(const History& h);

// Short explanation of which concurrent resolution applies to `updates`.
std::string oracle_applicable_note(std::span<const Update> updates);

}  // namespace crdtlab
