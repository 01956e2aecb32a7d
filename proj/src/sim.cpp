#include "crdtlab/sim.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "crdtlab/error.hpp"
#include "crdtlab/semantics.hpp"
#include "designs.hpp"

namespace crdtlab::sim {

const char* to_string(Design d) {
  switch (d) {
    case Design::or_set: return "or-set";
    case Design::opt_or_set: return "opt-or-set";
    case Design::cart: return "cart";
    case Design::c_set: return "c-set";
  }
  return "?";
}

const char* to_string(Delivery d) {
  return d == Delivery::causal ? "causal" : "any-order";
}

std::optional<Design> parse_design(std::string_view name) {
  for (Design d : {Design::or_set, Design::opt_or_set, Design::cart, Design::c_set})
    if (name == to_string(d)) return d;
  return std::nullopt;
}

std::optional<Delivery> parse_delivery(std::string_view name) {
  if (name == "causal") return Delivery::causal;
  if (name == "any-order") return Delivery::any_order;
  return std::nullopt;
}

bool supports_merge(Design d) { return d != Design::c_set; }

const char* to_string(CheckKind k) {
  switch (k) {
    case CheckKind::oracle: return "oracle";
    case CheckKind::permutation: return "permutation";
    case CheckKind::converged: return "converged";
  }
  return "?";
}

std::optional<CheckKind> parse_check(std::string_view name) {
  for (CheckKind k : {CheckKind::oracle, CheckKind::permutation, CheckKind::converged})
    if (name == to_string(k)) return k;
  return std::nullopt;
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "FAIL";
    case Outcome::not_applicable: return "not applicable";
  }
  return "?";
}

const char* aux_column(Design d) {
  switch (d) {
    case Design::opt_or_set: return "vector_len";
    case Design::cart: return "unused";
    default: return "T_size";
  }
}

Element element_name(std::size_t i) {
  Element out;
  do {
    out.insert(out.begin(), static_cast<char>('a' + i % 26));
    i /= 26;
  } while (i-- > 0);
  return out;
}

bool RunReport::passed() const { return first_failure() == nullptr; }

const CheckResult* RunReport::first_failure() const {
  for (const auto& c : checks)
    if (c.outcome == Outcome::fail) return &c;
  return nullptr;
}

namespace {

std::string at_event(std::size_t i) { return "event " + std::to_string(i) + ": "; }

void check_replica(ReplicaId r, std::size_t n, std::size_t i) {
  if (r.index >= n)
    throw ConfigError(at_event(i) + "replica " + std::to_string(r.index) +
                      " out of range (scenario has " + std::to_string(n) + ")");
}

}  // namespace

void validate(const Scenario& sc) {
  if (sc.replicas == 0) throw ConfigError("scenario needs at least one replica");
  if (sc.design == Design::opt_or_set && sc.delivery != Delivery::causal)
    throw ConfigError("opt-or-set requires causal delivery");
  if (sc.design == Design::c_set && sc.faults.duplicates)
    throw ConfigError("c-set deltas must be delivered at most once; "
                      "duplicate faults are not supported");
  std::size_t ops = 0;
  for (std::size_t i = 0; i < sc.events.size(); ++i) {
    const auto& ev = sc.events[i];
    if (auto* op = std::get_if<OpEvent>(&ev)) {
      check_replica(op->replica, sc.replicas, i);
      ++ops;
    } else if (auto* d = std::get_if<DeliverEvent>(&ev)) {
      check_replica(d->at, sc.replicas, i);
      if (d->message && *d->message >= ops)
        throw ConfigError(at_event(i) + "message " + std::to_string(*d->message) +
                          " has not been produced yet");
    } else if (auto* m = std::get_if<MergeEvent>(&ev)) {
      if (!supports_merge(sc.design))
        throw ConfigError(at_event(i) + std::string(to_string(sc.design)) +
                          " has no merge operation");
      check_replica(m->from, sc.replicas, i);
      check_replica(m->to, sc.replicas, i);
      if (m->from == m->to)
        throw ConfigError(at_event(i) + "merge of a replica into itself");
    } else if (auto* c = std::get_if<CheckEvent>(&ev)) {
      if (c->check == CheckKind::permutation && ops > kDefaultPermutationBound)
        throw ConfigError(at_event(i) + "permutation check over " +
                          std::to_string(ops) + " updates exceeds the bound of " +
                          std::to_string(kDefaultPermutationBound));
    }
  }
}

namespace {

template <class Replica>
class Engine {
 public:
  Engine(const Scenario& sc, const RunOptions& opts)
      : sc_(sc), opts_(opts), history_(sc.replicas), applied_(sc.replicas),
        inflight_(sc.replicas), duplicates_(sc.replicas),
        rng_(sc.seed ^ 0x9e3779b97f4a7c15ULL) {
    for (std::uint32_t r = 0; r < sc.replicas; ++r)
      replicas_.emplace_back(sc.replicas, ReplicaId{r});
    report_.scenario = sc;
  }

  RunReport run() {
    for (std::size_t i = 0; i < sc_.events.size(); ++i) {
      try {
        std::visit([&](const auto& ev) { apply(i, ev); }, sc_.events[i]);
      } catch (const DeliveryContractError& e) {
        throw DeliveryContractError(at_event(i) + e.what());
      } catch (const InvariantViolation& e) {
        throw InvariantViolation(at_event(i) + e.what());
      } catch (const LookupError& e) {
        throw LookupError(at_event(i) + e.what());
      } catch (const ConfigError& e) {
        throw ConfigError(at_event(i) + e.what());
      }
    }
    sync_all(std::nullopt);
    check(std::nullopt, CheckKind::converged);
    for (const auto& r : replicas_) {
      report_.final_elements.push_back(r.elements());
      report_.final_payloads.push_back(r.encode().dump());
    }
    report_.history = std::move(history_);
    return std::move(report_);
  }

 private:
  struct Message {
    EventId event;
    typename Replica::Message payload;
  };

  void apply(std::size_t, const OpEvent& op) {
    const ReplicaId r = op.replica;
    flush_duplicates(r);
    const UpdateEvent& ev = history_.record(r, op.update, applied_[r.index]);
    messages_.push_back(Message{ev.id, replicas_[r.index].update(op.update)});
    applied_[r.index].insert(ev.id);
    for (std::uint32_t t = 0; t < sc_.replicas; ++t)
      if (t != r.index) inflight_[t].insert(messages_.size() - 1);
    report_.trace.push_back({TraceEntry::Kind::op, ev.id, r, r, false});
    after_step(r);
  }

  void apply(std::size_t, const DeliverEvent& d) {
    const ReplicaId at = d.at;
    std::size_t msg;
    if (d.message) {
      msg = *d.message;
      if (!inflight_[at.index].contains(msg))
        throw LookupError("message " + std::to_string(msg) +
                          " is not in flight to replica " + std::to_string(at.index));
      if (!deliverable(msg, at))
        throw DeliveryContractError(
            "message " + std::to_string(msg) + " is not causally deliverable at replica " +
            std::to_string(at.index));
    } else {
      std::vector<std::size_t> candidates;
      for (std::size_t m : inflight_[at.index])
        if (deliverable(m, at)) candidates.push_back(m);
      if (candidates.empty()) return;
      msg = candidates[rng_() % candidates.size()];
    }
    inflight_[at.index].erase(msg);
    deliver(msg, at, false);
  }

  void apply(std::size_t, const MergeEvent& m) {
    if constexpr (Replica::kMergeable) {
      replicas_[m.to.index].merge_from(replicas_[m.from.index]);
      const auto& src = applied_[m.from.index];
      applied_[m.to.index].insert(src.begin(), src.end());
      report_.trace.push_back({TraceEntry::Kind::merge, EventId{}, m.to, m.from, false});
      after_step(m.to);
    } else {
      throw ConfigError(std::string(to_string(sc_.design)) + " has no merge operation");
    }
  }

  void apply(std::size_t i, const SyncAllEvent&) { sync_all(i); }

  void apply(std::size_t i, const CheckEvent& c) {
    check(i, c.check);
    checkpoint(i);
  }

  bool deliverable(std::size_t msg, ReplicaId at) const {
    if (sc_.delivery == Delivery::any_order) return true;
    const auto& deps = history_.at(messages_[msg].event).observed;
    const auto& have = applied_[at.index];
    return std::includes(have.begin(), have.end(), deps.begin(), deps.end());
  }

  void deliver(std::size_t msg, ReplicaId at, bool duplicate) {
    const Message& m = messages_[msg];
    replicas_[at.index].deliver(m.payload);
    auto& have = applied_[at.index];
    if constexpr (Replica::kSnapshots) {
      const auto& past = history_.at(m.event).observed;
      have.insert(past.begin(), past.end());
    }
    have.insert(m.event);
    if (sc_.faults.duplicates && !duplicate) duplicates_[at.index].push_back(msg);
    report_.trace.push_back({TraceEntry::Kind::deliver, m.event, at, at, duplicate});
    after_step(at);
  }

  void flush_duplicates(ReplicaId at) {
    auto pending = std::move(duplicates_[at.index]);
    duplicates_[at.index].clear();
    for (std::size_t msg : pending) deliver(msg, at, true);
  }

  void sync_all(std::optional<std::size_t> index) {
    for (;;) {
      std::vector<std::pair<std::uint32_t, std::size_t>> ready;
      for (std::uint32_t t = 0; t < sc_.replicas; ++t)
        for (std::size_t m : inflight_[t])
          if (deliverable(m, ReplicaId{t})) ready.emplace_back(t, m);
      if (ready.empty()) break;
      // Causal mode drains in a fixed order; any-order mode shuffles.
      auto [t, m] = sc_.delivery == Delivery::causal ? ready.front()
                                                     : ready[rng_() % ready.size()];
      inflight_[t].erase(m);
      deliver(m, ReplicaId{t}, false);
    }
    for (std::uint32_t t = 0; t < sc_.replicas; ++t) {
      if (!inflight_[t].empty())
        throw InvariantViolation("sync-all left undeliverable messages at replica " +
                                 std::to_string(t));
      flush_duplicates(ReplicaId{t});
    }
    if constexpr (Replica::kMergeable) {
      for (std::uint32_t r = 1; r < sc_.replicas; ++r)
        apply(0, MergeEvent{ReplicaId{r}, ReplicaId{0}});
      for (std::uint32_t r = 1; r < sc_.replicas; ++r)
        apply(0, MergeEvent{ReplicaId{0}, ReplicaId{r}});
    }
    checkpoint(index);
  }

  void check(std::optional<std::size_t> index, CheckKind kind) {
    CheckResult res{index, kind, Outcome::pass, {}};
    switch (kind) {
      case CheckKind::converged:
        for (std::size_t r = 1; r < replicas_.size(); ++r) {
          if (!replicas_[r].same_payload(replicas_[0])) {
            res.outcome = Outcome::fail;
            res.detail = "replica " + std::to_string(r) + " " +
                         to_string(replicas_[r].elements()) + " differs from replica 0 " +
                         to_string(replicas_[0].elements());
            break;
          }
        }
        break;
      case CheckKind::oracle:
        for (std::size_t r = 0; r < replicas_.size(); ++r) {
          const AbstractState want = add_wins_oracle(history_.restricted_to(applied_[r]));
          const AbstractState got = replicas_[r].elements();
          if (got != want) {
            res.outcome = Outcome::fail;
            res.detail = "replica " + std::to_string(r) + " holds " + to_string(got) +
                         " but add-wins expects " + to_string(want);
            break;
          }
        }
        break;
      case CheckKind::permutation: {
        const bool converged = std::all_of(
            replicas_.begin(), replicas_.end(),
            [&](const Replica& r) { return r.same_payload(replicas_[0]); });
        if (!converged) {
          res.outcome = Outcome::fail;
          res.detail = "replicas have not converged";
          break;
        }
        const AbstractState got = replicas_[0].elements();
        const Verdict v = permutation_equivalence_check(history_, got);
        if (!v.applicable) {
          res.outcome = Outcome::not_applicable;
          res.detail = "sequential orders disagree";
        } else if (!v.conforms) {
          res.outcome = Outcome::fail;
          res.detail = "converged to " + to_string(got) + " but every sequential order gives " +
                       to_string(*v.expected);
        }
        break;
      }
    }
    report_.checks.push_back(std::move(res));
  }

  void checkpoint(std::optional<std::size_t> index) {
    Checkpoint cp{index, {}};
    for (const auto& r : replicas_) cp.elements.push_back(r.elements());
    report_.checkpoints.push_back(std::move(cp));
  }

  void after_step(ReplicaId touched) {
    if (opts_.check_invariants) replicas_[touched.index].check();
    if (opts_.sample_sizes) {
      for (std::size_t r = 0; r < replicas_.size(); ++r)
        report_.samples.push_back({step_, r, replicas_[r].entries(), replicas_[r].aux(),
                                   replicas_[r].elements().size()});
    }
    ++step_;
  }

  const Scenario& sc_;
  RunOptions opts_;
  std::vector<Replica> replicas_;
  History history_;
  std::vector<std::set<EventId>> applied_;
  std::vector<Message> messages_;
  std::vector<std::set<std::size_t>> inflight_;
  std::vector<std::vector<std::size_t>> duplicates_;
  std::mt19937_64 rng_;
  RunReport report_;
  std::size_t step_ = 0;
};

}  // namespace

RunReport run(const Scenario& sc, const RunOptions& opts) {
  validate(sc);
  switch (sc.design) {
    case Design::or_set: return Engine<detail::OrSetReplica>(sc, opts).run();
    case Design::opt_or_set: return Engine<detail::OptOrSetReplica>(sc, opts).run();
    case Design::cart: return Engine<detail::CartReplica>(sc, opts).run();
    case Design::c_set: return Engine<detail::CSetReplica>(sc, opts).run();
  }
  throw ConfigError("unknown design");
}

std::string render_text(const RunReport& r) {
  std::ostringstream os;
  const Scenario& sc = r.scenario;
  os << "design " << to_string(sc.design) << ", " << sc.replicas << " replicas, "
     << to_string(sc.delivery) << " delivery, seed " << sc.seed
     << (sc.faults.duplicates ? ", duplicates" : "") << '\n';
  for (const auto& c : r.checks) {
    if (c.event_index)
      os << "check #" << *c.event_index;
    else
      os << "final";
    os << ' ' << to_string(c.kind) << ": " << to_string(c.outcome);
    if (!c.detail.empty()) os << " (" << c.detail << ')';
    os << '\n';
  }
  for (std::size_t i = 0; i < r.final_elements.size(); ++i)
    os << "replica " << i << ": " << to_string(r.final_elements[i]) << '\n';
  os << (r.passed() ? "result: pass" : "result: FAIL") << '\n';
  return os.str();
}

std::string render_samples_csv(const RunReport& r) {
  std::ostringstream os;
  os << "step,replica,E_size," << aux_column(r.scenario.design) << ",elements_count\n";
  for (const auto& s : r.samples)
    os << s.step << ',' << s.replica << ',' << s.entries << ',' << s.aux << ','
       << s.elements << '\n';
  return os.str();
}

Scenario random_scenario(const RandomScenarioParams& p, std::uint64_t seed) {
  if (p.replicas == 0 || p.elements == 0)
    throw ConfigError("random scenario needs replicas and elements");
  std::mt19937_64 rng(seed);
  auto pick = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  Scenario sc;
  sc.design = p.design;
  sc.replicas = p.replicas;
  sc.seed = seed;
  sc.delivery = p.delivery;
  sc.faults.duplicates = p.duplicates;

  auto replica = [&] { return ReplicaId{static_cast<std::uint32_t>(pick(p.replicas))}; };
  auto quiesce = [&] {
    sc.events.push_back(SyncAllEvent{});
    sc.events.push_back(CheckEvent{CheckKind::converged});
    sc.events.push_back(CheckEvent{CheckKind::oracle});
  };

  const bool merges = p.merges && supports_merge(p.design) && p.replicas > 1;
  std::size_t ops = 0;
  while (ops < p.updates) {
    const std::size_t roll = pick(100);
    if (roll < 50) {
      const auto kind = pick(2) == 0 ? UpdateKind::add : UpdateKind::remove;
      sc.events.push_back(OpEvent{replica(), Update{kind, element_name(pick(p.elements))}});
      if (++ops % p.checkpoint_every == 0 && ops < p.updates) quiesce();
    } else if (roll < 90 || !merges) {
      sc.events.push_back(DeliverEvent{std::nullopt, replica()});
    } else {
      const ReplicaId from = replica();
      ReplicaId to = replica();
      if (to == from) to.index = (to.index + 1) % p.replicas;
      sc.events.push_back(MergeEvent{from, to});
    }
  }
  quiesce();
  return sc;
}

}  // namespace crdtlab::sim
