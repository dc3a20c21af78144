#pragma once

#include <vector>

#include "dcc/econ.hpp"
#include "dcc/world.hpp"

namespace dcc {

// Token-circulation metrics over an epoch window, computed from the event
// log alone (effects are the authoritative deltas; `verify` cross-checks
// them against re-execution).
//
// Reconstructed definitions:
//   token_supply       sum over kinds of minted - burned at window end
//   total_information  content records accepted inside the window
//   invalid_information  content records revoked inside the window
//   valid_ratio        (total - invalid) / total, clamped to [0,1]; 1 when
//                      total == 0
//   absorbed_tokens    Capital still escrowed in project funding escrows at
//                      window end
//   circulation_ratio  (transfer + conversion + gas volume per epoch) / supply
//   inflation_ratio    (minted volume per epoch) / supply
CirculationMetrics compute_metrics(const std::vector<Event>& events,
                                   Epoch window_start, Epoch window_end);

}  // namespace dcc
