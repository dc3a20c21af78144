#pragma once

#include <string>
#include <vector>

#include "dcc/types.hpp"

namespace dcc {

// One balance-sheet delta. Bucket grammar:
//   bal/<account>/<K>   account balance
//   esc/<id>/<K>        escrow
//   pool/labor_rw/L     labor reward pool
//   pool/gov_rw/L       governance reward pool
//   lock/<id>/L         labor locked in a pending governance conversion
//   minted/<K>          cumulative mint counter
//   burned/<K>          cumulative burn counter
// where <K> is C, L or G. Every event carries its effects; the audit
// identity per kind is sum(holdings) == minted - burned, checked per event
// by `verify` and against full state in test builds.
struct Effect {
  std::string bucket;
  Amount delta{0};

  bool operator==(const Effect&) const = default;
};

using Effects = std::vector<Effect>;

std::string bal_bucket(const AccountId& account, TokenKind kind);
std::string esc_bucket(const std::string& escrow_id, TokenKind kind);
std::string pool_bucket(bool governance_pool);
std::string lock_bucket(const std::string& conversion_id);
std::string minted_bucket(TokenKind kind);
std::string burned_bucket(TokenKind kind);

// Per-kind check of the per-event identity above. Returns an empty string
// when balanced, else a description of the first imbalance.
std::string effects_imbalance(const Effects& effects);

}  // namespace dcc
