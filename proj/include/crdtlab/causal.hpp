#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace crdtlab {

using Element = std::string;

// Abstract value of a set: the plain mathematical set of present elements.
using AbstractState = std::set<Element>;

std::string to_string(const AbstractState& s);

struct ReplicaId {
  std::uint32_t index = 0;

  friend auto operator<=>(const ReplicaId&, const ReplicaId&) = default;
};

/// Globally unique update identifier: the `counter`-th identifier minted by
/// `replica`. Counters start at 1.
///
/// Ordered by replica first so that all dots minted by one replica are
/// contiguous in ordered containers.
struct Dot {
  std::uint64_t counter = 0;
  ReplicaId replica;

  friend bool operator==(const Dot&, const Dot&) = default;
  friend std::strong_ordering operator<=>(const Dot& a, const Dot& b) {
    if (auto c = a.replica <=> b.replica; c != 0) return c;
    return a.counter <=> b.counter;
  }
};

std::string to_string(const Dot& d);

/// Per-replica summary of received dots. Entry j = m means dots (1,j)..(m,j)
/// have all been seen. The length is fixed at construction.
class VersionVector {
 public:
  VersionVector() = default;
  explicit VersionVector(std::size_t replicas) : entries_(replicas, 0) {}
  explicit VersionVector(std::vector<std::uint64_t> entries)
      : entries_(std::move(entries)) {}

  std::size_t size() const { return entries_.size(); }
  std::uint64_t operator[](ReplicaId r) const;
  std::span<const std::uint64_t> entries() const { return entries_; }

  // Mints the next dot of replica `r` and records it.
  Dot increment(ReplicaId r);

  bool contains(const Dot& d) const;

  // Raises entry r to `counter` if it is lower. Entries never shrink.
  void advance(ReplicaId r, std::uint64_t counter);

  // Pointwise max, in place.
  void merge(const VersionVector& other);

  // Pointwise <=.
  bool leq(const VersionVector& other) const;

  friend bool operator==(const VersionVector&, const VersionVector&) = default;
  friend auto operator<=>(const VersionVector&, const VersionVector&) = default;

 private:
  void check_replica(ReplicaId r) const;
  void check_length(const VersionVector& other) const;

  std::vector<std::uint64_t> entries_;
};

VersionVector join(const VersionVector& a, const VersionVector& b);

std::string to_string(const VersionVector& v);

// Per-replica source of unique dots that does not consume a version vector.
class DotGenerator {
 public:
  explicit DotGenerator(ReplicaId replica) : replica_(replica) {}
  Dot next() { return Dot{++counter_, replica_}; }
  ReplicaId replica() const { return replica_; }

 private:
  ReplicaId replica_;
  std::uint64_t counter_ = 0;
};

enum class UpdateKind { add, remove };

const char* to_string(UpdateKind k);

struct Update {
  UpdateKind kind = UpdateKind::add;
  Element element;

  friend auto operator<=>(const Update&, const Update&) = default;
};

Update add(Element e);
Update remove(Element e);

std::string to_string(const Update& u);

// Event ids are per-replica sequence numbers over all updates issued there.
using EventId = Dot;

struct UpdateEvent {
  EventId id;
  ReplicaId replica;
  Update update;
  // Events whose effect was visible at the source when this update was
  // prepared. Always contains every earlier event of the same replica.
  std::set<EventId> observed;
};

/// The update events of one execution together with what each one observed.
/// Happens-before is the transitive closure of program order and
/// observation edges.
class History {
 public:
  History() = default;
  explicit History(std::size_t replicas) : next_seq_(replicas, 0) {}

  std::size_t replica_count() const { return next_seq_.size(); }

  // Appends an update issued at `replica`. Every id in `observed` must already
  // be recorded; earlier events of the same replica are added implicitly.
  const UpdateEvent& record(ReplicaId replica, Update update,
                            std::set<EventId> observed = {});

  std::span<const UpdateEvent> events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }

  bool contains(const EventId& id) const { return index_.contains(id); }
  const UpdateEvent& at(const EventId& id) const;

  bool happened_before(const EventId& a, const EventId& b) const;

  // True when every observed set is already closed under happens-before,
  // which is what causal delivery produces.
  bool observation_closed() const;

  // Sub-history over `keep`; observed sets are intersected with `keep`.
  History restricted_to(const std::set<EventId>& keep) const;

  std::vector<Update> updates() const;

 private:
  std::vector<UpdateEvent> events_;
  std::map<EventId, std::size_t> index_;
  std::vector<std::uint64_t> next_seq_;
};

}  // namespace crdtlab
