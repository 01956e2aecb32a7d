#pragma once

#include <compare>
#include <set>

#include "crdtlab/causal.hpp"

namespace crdtlab {

// An element paired with the dot of the add that inserted it.
struct Tagged {
  Element element;
  Dot dot;

  friend bool operator==(const Tagged&, const Tagged&) = default;
  friend std::strong_ordering operator<=>(const Tagged& a, const Tagged& b) {
    if (auto c = a.element.compare(b.element); c != 0)
      return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.dot <=> b.dot;
  }
};

using TaggedSet = std::set<Tagged>;

}  // namespace crdtlab
