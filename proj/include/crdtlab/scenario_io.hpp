#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "crdtlab/sim.hpp"

// Scenario files are JSON objects:
//
//   {
//     "design": "or-set" | "opt-or-set" | "cart" | "c-set",
//     "replicas": 2,
//     "seed": 0,                                  optional, default 0
//     "delivery": "causal" | "any-order",         optional, default causal
//     "faults": {"duplicates": false},            optional
//     "events": [
//       {"type": "op", "replica": 0, "kind": "add", "element": "e"},
//       {"type": "deliver", "message": 0, "at": 1},     or "message": "next"
//       {"type": "merge", "from": 0, "to": 1},
//       {"type": "sync-all"},
//       {"type": "check", "check": "oracle" | "permutation" | "converged"}
//     ]
//   }
namespace crdtlab::sim {

// Throws ParseError with a byte offset (syntax) or JSON pointer (schema).
Scenario parse_scenario(std::string_view text);

// Throws FileError when the file cannot be read.
Scenario load_scenario(const std::filesystem::path& path);

std::string to_json(const Scenario& sc, bool pretty = true);

}  // namespace crdtlab::sim
