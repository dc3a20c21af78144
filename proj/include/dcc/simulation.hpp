#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dcc/scenario.hpp"
#include "dcc/world.hpp"

namespace dcc {

struct RunResult {
  std::string final_state_hash;
  std::vector<Event> events;
  Json report;
};

// Deterministic scenario run. Epoch phase order is fixed by contract:
//   1 elections  2 content+audits  3 crowdfunding actions
//   4 settlements/tranches  5 supervision closings  6 regulation
//   7 rate update  8 conversions advance
RunResult run_simulation(const ScenarioConfig& config);

// Writes <out>/events.ndjson and <out>/report.json (no timestamps).
void write_run(const RunResult& result, const std::filesystem::path& out_dir);

std::vector<Event> read_event_log(const std::filesystem::path& path);

// Re-applies the log on a fresh world, checking every recorded state hash.
// Throws CorruptLog naming the first divergent seq. Returns the final hash
// (the empty-world hash for an empty log).
std::string replay_log(const std::vector<Event>& events);

struct Violation {
  std::uint64_t seq{0};
  std::string kind;  // conservation | output-mismatch | state-hash | credit-clamp | seq-gap | apply-error
  std::string detail;
};

// Full audit: re-executes each event from its inputs and checks
//   - per-event effect deltas balance (holdings == minted - burned)
//   - recomputed outputs match the recorded outputs (settlement arithmetic,
//     election rosters, judgments)
//   - full-state conservation after every event
//   - recorded state hashes
//   - credit scores stay in [0,100]
std::vector<Violation> verify_log(const std::vector<Event>& events);

// Deterministic per-epoch report used by `dcc run` (recomputable from log).
Json build_report(const std::vector<Event>& events, const std::string& final_hash);

}  // namespace dcc
