#pragma once

#include <string>
#include <vector>

#include "dcc/world.hpp"

namespace dcc {

// Deterministic CSV exports from an event log. Column orders are part of
// the contract:
//   metrics:     epoch,token_supply,total_information,invalid_information,
//                valid_ratio,absorbed_tokens,circulation_ratio,inflation_ratio
//   credit:      epoch,subject,score,cause
//   settlements: epoch,project,success,raised,target,funded_rate,
//                marketing_pool,production_fund,capital_returned,
//                labor_refunded,labor_burned
//   assembly:    epoch,seat,role,holder,party
// Ratios print with six fixed decimals.
std::string report_csv(const std::vector<Event>& events, const std::string& kind);

// Fixed-point decimal rendering of a rational (floor), e.g. 13/6 -> "2.166666".
std::string rational_fixed(const Rational& value, int places);

}  // namespace dcc
