#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "crdtlab/sim.hpp"

namespace crdtlab::sim {

struct SpaceParams {
  Design design = Design::opt_or_set;
  std::size_t replicas = 3;
  std::size_t cycles = 1000;
  std::size_t elements = 1;
  std::uint64_t seed = 0;
};

struct SpaceRow {
  std::size_t round = 0;
  std::size_t replica = 0;
  std::size_t entries = 0;  // |E|
  std::size_t aux = 0;      // |T| for or-set, vector length for opt-or-set
  std::size_t elements = 0;
};

struct SpaceTable {
  SpaceParams params;
  std::vector<SpaceRow> rows;
  std::size_t max_entries = 0;   // largest |E| seen at any replica after any step
  std::size_t max_aux = 0;
  std::size_t max_bound_excess = 0;  // max of |E| - |elements| * n, clamped at 0
  std::size_t add_effects = 0;       // distinct adds issued
};

/// Add/remove workload with a full sync each round.
///
/// Round j (1-based) uses element e = j mod elements: one seeded replica
/// removes e, everything is synced, then every replica adds e and everything
/// is synced again. One row per replica is recorded after each round, plus a
/// round-0 row for the initial state. Only or-set and opt-or-set are
/// supported (ConfigError otherwise).
SpaceTable measure_space(const SpaceParams& p);

// Columns: round,replica,E_size,T_size|vector_len,elements_count
std::string render_csv(const SpaceTable& t);

}  // namespace crdtlab::sim
