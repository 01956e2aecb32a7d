#pragma once

// Uniform replica wrappers the simulator and the space experiment drive.
//
// Each wrapper exposes:
//   Message update(const Update&)     prepare at source, apply locally
//   void deliver(const Message&)      downstream effect
//   void merge_from(const Self&)      state merge (mergeable designs only)
//   elements(), check(), encode(), entries(), aux()

#include <variant>

#include "crdtlab/legacy.hpp"
#include "crdtlab/opt_orset.hpp"
#include "crdtlab/orset.hpp"
#include "json.hpp"

namespace crdtlab::sim::detail {

inline nlohmann::json encode_tagged(const TaggedSet& s) {
  auto out = nlohmann::json::array();
  for (const auto& t : s)
    out.push_back({t.element, t.dot.counter, t.dot.replica.index});
  return out;
}

inline nlohmann::json encode_vector(const VersionVector& v) {
  return nlohmann::json(std::vector<std::uint64_t>(v.entries().begin(),
                                                   v.entries().end()));
}

class OrSetReplica {
 public:
  using Message = std::variant<orset::AddEffect, orset::RemoveEffect>;
  static constexpr bool kMergeable = true;
  static constexpr bool kSnapshots = false;

  OrSetReplica(std::size_t, ReplicaId self) : ids_(self) {}

  Message update(const Update& u) {
    if (u.kind == UpdateKind::add) {
      auto eff = orset::add_prepare(state_, u.element, ids_);
      state_ = orset::add_effect(std::move(state_), eff);
      return eff;
    }
    auto eff = orset::remove_prepare(state_, u.element);
    state_ = orset::remove_effect(std::move(state_), eff);
    return eff;
  }

  void deliver(const Message& m) {
    if (auto* a = std::get_if<orset::AddEffect>(&m))
      state_ = orset::add_effect(std::move(state_), *a);
    else
      state_ = orset::remove_effect(std::move(state_),
                                    std::get<orset::RemoveEffect>(m));
  }

  void merge_from(const OrSetReplica& o) { state_ = orset::merge(state_, o.state_); }

  AbstractState elements() const { return orset::elements(state_); }
  void check() const { orset::check_invariants(state_); }
  nlohmann::json encode() const {
    return {{"E", encode_tagged(state_.entries)},
            {"T", encode_tagged(state_.tombstones)}};
  }
  std::size_t entries() const { return state_.entries.size(); }
  std::size_t aux() const { return state_.tombstones.size(); }
  const orset::State& state() const { return state_; }
  bool same_payload(const OrSetReplica& o) const { return state_ == o.state_; }

 private:
  orset::State state_;
  DotGenerator ids_;
};

class OptOrSetReplica {
 public:
  using Message = std::variant<opt_orset::AddEffect, opt_orset::RemoveEffect>;
  static constexpr bool kMergeable = true;
  static constexpr bool kSnapshots = false;

  OptOrSetReplica(std::size_t n, ReplicaId self) : state_(n), self_(self) {}

  Message update(const Update& u) {
    if (u.kind == UpdateKind::add) {
      auto eff = opt_orset::add_prepare(state_, u.element, self_);
      state_ = opt_orset::add_effect(std::move(state_), eff);
      return eff;
    }
    auto eff = opt_orset::remove_prepare(state_, u.element);
    state_ = opt_orset::remove_effect(std::move(state_), eff);
    return eff;
  }

  void deliver(const Message& m) {
    if (auto* a = std::get_if<opt_orset::AddEffect>(&m))
      state_ = opt_orset::add_effect(std::move(state_), *a);
    else
      state_ = opt_orset::remove_effect(std::move(state_),
                                        std::get<opt_orset::RemoveEffect>(m));
  }

  void merge_from(const OptOrSetReplica& o) {
    state_ = opt_orset::merge(state_, o.state_);
  }

  AbstractState elements() const { return opt_orset::elements(state_); }
  void check() const { opt_orset::check_invariants(state_); }
  nlohmann::json encode() const {
    return {{"E", encode_tagged(state_.entries)},
            {"v", encode_vector(state_.summary)}};
  }
  std::size_t entries() const { return state_.entries.size(); }
  std::size_t aux() const { return state_.summary.size(); }
  const opt_orset::State& state() const { return state_; }
  bool same_payload(const OptOrSetReplica& o) const { return state_ == o.state_; }

 private:
  opt_orset::State state_;
  ReplicaId self_;
};

// Writes ship the whole post-write register state; delivery merges it, so a
// message carries its entire causal past.
class CartReplica {
 public:
  using Message = legacy::CartState;
  static constexpr bool kMergeable = true;
  static constexpr bool kSnapshots = true;

  CartReplica(std::size_t n, ReplicaId self) : n_(n), self_(self) {}

  Message update(const Update& u) {
    AbstractState value = legacy::cart_read(state_);
    if (u.kind == UpdateKind::add)
      value.insert(u.element);
    else
      value.erase(u.element);
    VersionVector clock = legacy::cart_context(state_, n_);
    clock.increment(self_);
    state_ = legacy::cart_write(std::move(state_), std::move(value), std::move(clock));
    return state_;
  }

  void deliver(const Message& m) { state_ = legacy::cart_merge(state_, m); }
  void merge_from(const CartReplica& o) { state_ = legacy::cart_merge(state_, o.state_); }

  AbstractState elements() const { return legacy::cart_read(state_); }
  void check() const { legacy::check_invariants(state_); }
  nlohmann::json encode() const {
    auto sibs = nlohmann::json::array();
    for (const auto& s : state_.siblings)
      sibs.push_back({{"clock", encode_vector(s.clock)}, {"value", s.value}});
    return {{"siblings", sibs}};
  }
  std::size_t entries() const { return state_.siblings.size(); }
  std::size_t aux() const { return 0; }
  bool same_payload(const CartReplica& o) const { return state_ == o.state_; }

 private:
  legacy::CartState state_;
  std::size_t n_;
  ReplicaId self_;
};

class CSetReplica {
 public:
  using Message = legacy::CSetDelta;
  static constexpr bool kMergeable = false;
  static constexpr bool kSnapshots = false;

  CSetReplica(std::size_t, ReplicaId) {}

  Message update(const Update& u) {
    auto d = u.kind == UpdateKind::add ? legacy::cset_add(state_, u.element)
                                       : legacy::cset_remove(state_, u.element);
    state_ = legacy::cset_deliver(std::move(state_), d);
    return d;
  }

  void deliver(const Message& m) { state_ = legacy::cset_deliver(std::move(state_), m); }
  void merge_from(const CSetReplica&) {}

  AbstractState elements() const { return legacy::cset_elements(state_); }
  void check() const {}
  nlohmann::json encode() const { return {{"counts", state_.counts}}; }
  std::size_t entries() const { return state_.counts.size(); }
  std::size_t aux() const { return 0; }
  bool same_payload(const CSetReplica& o) const { return state_ == o.state_; }

 private:
  legacy::CSetState state_;
};

}  // namespace crdtlab::sim::detail
