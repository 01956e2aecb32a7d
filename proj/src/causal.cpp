#include "crdtlab/causal.hpp"

#include <algorithm>
#include <sstream>

#include "crdtlab/error.hpp"

namespace crdtlab {

std::string to_string(const AbstractState& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& e : s) {
    if (!first) out += ", ";
    out += e;
    first = false;
  }
  out += "}";
  return out;
}

std::string to_string(const Dot& d) {
  return "(" + std::to_string(d.counter) + "," +
         std::to_string(d.replica.index) + ")";
}

std::uint64_t VersionVector::operator[](ReplicaId r) const {
  check_replica(r);
  return entries_[r.index];
}

Dot VersionVector::increment(ReplicaId r) {
  check_replica(r);
  return Dot{++entries_[r.index], r};
}

bool VersionVector::contains(const Dot& d) const {
  check_replica(d.replica);
  return d.counter <= entries_[d.replica.index];
}

void VersionVector::advance(ReplicaId r, std::uint64_t counter) {
  check_replica(r);
  entries_[r.index] = std::max(entries_[r.index], counter);
}

void VersionVector::merge(const VersionVector& other) {
  check_length(other);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    entries_[i] = std::max(entries_[i], other.entries_[i]);
}

bool VersionVector::leq(const VersionVector& other) const {
  check_length(other);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i] > other.entries_[i]) return false;
  return true;
}

void VersionVector::check_replica(ReplicaId r) const {
  if (r.index >= entries_.size())
    throw InvalidReplicaError("replica " + std::to_string(r.index) +
                              " out of range for vector of length " +
                              std::to_string(entries_.size()));
}

void VersionVector::check_length(const VersionVector& other) const {
  if (other.entries_.size() != entries_.size())
    throw ConfigError("version vector length mismatch: " +
                      std::to_string(entries_.size()) + " vs " +
                      std::to_string(other.entries_.size()));
}

VersionVector join(const VersionVector& a, const VersionVector& b) {
  VersionVector out = a;
  out.merge(b);
  return out;
}

std::string to_string(const VersionVector& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v.entries()[i];
  }
  os << ']';
  return os.str();
}

const char* to_string(UpdateKind k) {
  return k == UpdateKind::add ? "add" : "remove";
}

Update add(Element e) { return Update{UpdateKind::add, std::move(e)}; }
Update remove(Element e) { return Update{UpdateKind::remove, std::move(e)}; }

std::string to_string(const Update& u) {
  return std::string(to_string(u.kind)) + "(" + u.element + ")";
}

const UpdateEvent& History::record(ReplicaId replica, Update update,
                                   std::set<EventId> observed) {
  if (replica.index >= next_seq_.size())
    throw InvalidReplicaError("history has no replica " +
                              std::to_string(replica.index));
  for (const auto& id : observed)
    if (!contains(id))
      throw LookupError("observed event " + to_string(id) +
                        " is not in the history");
  for (std::uint64_t s = 1; s <= next_seq_[replica.index]; ++s)
    observed.insert(EventId{s, replica});

  EventId id{++next_seq_[replica.index], replica};
  index_.emplace(id, events_.size());
  events_.push_back(UpdateEvent{id, replica, std::move(update),
                                std::move(observed)});
  return events_.back();
}

const UpdateEvent& History::at(const EventId& id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw LookupError("unknown event " + to_string(id));
  return events_[it->second];
}

bool History::happened_before(const EventId& a, const EventId& b) const {
  at(a);
  const UpdateEvent& target = at(b);
  // Observed ids always precede the observer in events_, so a depth-first
  // walk over observed sets terminates.
  std::set<EventId> seen;
  std::vector<const UpdateEvent*> stack{&target};
  while (!stack.empty()) {
    const UpdateEvent* ev = stack.back();
    stack.pop_back();
    for (const auto& o : ev->observed) {
      if (o == a) return true;
      if (seen.insert(o).second) stack.push_back(&at(o));
    }
  }
  return false;
}

bool History::observation_closed() const {
  for (const auto& ev : events_)
    for (const auto& o : ev.observed)
      for (const auto& oo : at(o).observed)
        if (!ev.observed.contains(oo)) return false;
  return true;
}

History History::restricted_to(const std::set<EventId>& keep) const {
  History out;
  out.next_seq_ = next_seq_;
  for (const auto& ev : events_) {
    if (!keep.contains(ev.id)) continue;
    UpdateEvent copy{ev.id, ev.replica, ev.update, {}};
    std::set_intersection(ev.observed.begin(), ev.observed.end(), keep.begin(),
                          keep.end(),
                          std::inserter(copy.observed, copy.observed.end()));
    out.index_.emplace(copy.id, out.events_.size());
    out.events_.push_back(std::move(copy));
  }
  return out;
}

std::vector<Update> History::updates() const {
  std::vector<Update> out;
  out.reserve(events_.size());
  for (const auto& ev : events_) out.push_back(ev.update);
  return out;
}

}  // namespace crdtlab
