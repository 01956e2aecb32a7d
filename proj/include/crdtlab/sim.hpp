#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "crdtlab/causal.hpp"

namespace crdtlab::sim {

using crdtlab::to_string;

enum class Design { or_set, opt_or_set, cart, c_set };
enum class Delivery { causal, any_order };

const char* to_string(Design d);
const char* to_string(Delivery d);
std::optional<Design> parse_design(std::string_view name);
std::optional<Delivery> parse_delivery(std::string_view name);

// c-set is purely op-based and has no state merge.
bool supports_merge(Design d);

struct Faults {
  // Every delivered message is delivered a second time later on.
  bool duplicates = false;
};

enum class CheckKind { oracle, permutation, converged };

const char* to_string(CheckKind k);
std::optional<CheckKind> parse_check(std::string_view name);

struct OpEvent {
  ReplicaId replica;
  Update update;
};

// `message` is the ordinal of the op event that produced it (0-based, counting
// op events only). An empty `message` means "next deliverable at `at`".
struct DeliverEvent {
  std::optional<std::size_t> message;
  ReplicaId at;
};

struct MergeEvent {
  ReplicaId from;
  ReplicaId to;
};

struct SyncAllEvent {};

struct CheckEvent {
  CheckKind check = CheckKind::converged;
};

using ScenarioEvent =
    std::variant<OpEvent, DeliverEvent, MergeEvent, SyncAllEvent, CheckEvent>;

struct Scenario {
  Design design = Design::or_set;
  std::size_t replicas = 1;
  std::uint64_t seed = 0;
  Delivery delivery = Delivery::causal;
  Faults faults;
  std::vector<ScenarioEvent> events;
};

// Throws ConfigError naming the first offending event.
void validate(const Scenario& sc);

enum class Outcome { pass, fail, not_applicable };

const char* to_string(Outcome o);

struct CheckResult {
  std::optional<std::size_t> event_index;  // empty for the implicit final check
  CheckKind kind = CheckKind::converged;
  Outcome outcome = Outcome::pass;
  std::string detail;
};

// Payload size of one replica after one step. `entries` is |E| (siblings for
// cart, counters for c-set); `aux` is |T| for or-set and the vector length for
// opt-or-set.
struct SizeSample {
  std::size_t step = 0;
  std::size_t replica = 0;
  std::size_t entries = 0;
  std::size_t aux = 0;
  std::size_t elements = 0;
};

struct Checkpoint {
  std::optional<std::size_t> event_index;
  std::vector<AbstractState> elements;  // per replica
};

struct TraceEntry {
  enum class Kind { op, deliver, merge };
  Kind kind = Kind::op;
  EventId event;       // op and deliver
  ReplicaId at;        // where it took effect
  ReplicaId from;      // merge source
  bool duplicate = false;
};

struct RunReport {
  Scenario scenario;
  std::vector<CheckResult> checks;
  std::vector<SizeSample> samples;
  std::vector<Checkpoint> checkpoints;
  std::vector<AbstractState> final_elements;
  std::vector<std::string> final_payloads;  // canonical JSON per replica
  History history;
  std::vector<TraceEntry> trace;

  bool passed() const;
  const CheckResult* first_failure() const;
};

struct RunOptions {
  bool sample_sizes = true;
  bool check_invariants = true;
};

/// Executes the scenario deterministically. An op runs prepare and effect at
/// its source and queues the effect for every other replica. The run ends
/// with an implicit sync-all and convergence check.
///
/// Throws ConfigError, DeliveryContractError or LookupError for a bad
/// scenario and InvariantViolation for a broken payload; messages name the
/// offending event index.
RunReport run(const Scenario& sc, const RunOptions& opts = {});

std::string render_text(const RunReport& r);
std::string render_samples_csv(const RunReport& r);

// Name of the SizeSample::aux column for `d`.
const char* aux_column(Design d);

struct RandomScenarioParams {
  Design design = Design::or_set;
  std::size_t replicas = 3;
  std::size_t updates = 30;
  std::size_t elements = 3;
  Delivery delivery = Delivery::causal;
  bool duplicates = false;
  bool merges = true;
  std::size_t checkpoint_every = 10;  // sync-all plus checks after this many ops
};

// Random mix of ops, next-deliverable deliveries, merges and periodic
// quiescent checkpoints. Depends only on (params, seed).
Scenario random_scenario(const RandomScenarioParams& p, std::uint64_t seed);

// Element names used by generators: "a", "b", ...
Element element_name(std::size_t i);

}  // namespace crdtlab::sim
