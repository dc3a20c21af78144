#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dcc/canonical.hpp"
#include "dcc/hash.hpp"
#include "dcc/ledger.hpp"
#include "dcc/rational.hpp"
#include "dcc/types.hpp"

namespace dcc {

enum class Role : int { Chief = 0, Senatorial = 1, Arbitral = 2 };

std::string_view to_string(Role role);
Role role_from_string(std::string_view name);

struct Party {
  std::string id;
  std::string charter_digest;  // the party smart contract
  AccountId founder;
  std::set<AccountId> members;
};

struct Seat {
  int index{0};
  Role role{Role::Arbitral};
  AccountId holder;
  std::string party;
};

struct Assembly {
  Epoch epoch{-1};
  std::string seed_hex;
  std::vector<Seat> seats;

  bool valid() const { return !seats.empty(); }
  std::set<AccountId> holders_with(Role role) const;
  bool holds_role(const AccountId& account, Role role) const;
};

// Chief-issued boost for the next arbitral selection only.
struct Nomination {
  Epoch epoch_effective{0};
  std::set<AccountId> candidates;
  Rational boost{2, 1};  // > 1
};

struct RoleCounts {
  int chief{1};
  int senatorial{3};
  int arbitral{1};
  int total() const { return chief + senatorial + arbitral; }
};

// Governance-adjustable ecosystem parameters and their vote thresholds.
// Everything here is senatorially amendable at runtime; supervision vote
// thresholds live here (not in the static supervision config) for exactly
// that reason.
struct ParameterSet {
  Rational labor_to_governance{1, 1};       // Governance per Labor on conversion
  Rational incentive_pool_split{7, 10};     // labor-community share of the pool
  Rational platform_supervision_share{0, 1};
  Rational platform_decay{4, 5};            // strictly < 1
  Rational platform_cutoff{1, 100};
  Rational amendment_supermajority{2, 3};
  Rational impeachment_supermajority{2, 3};
  Rational split_min{1, 10};
  Rational split_max{9, 10};
  Amount party_min_governance{10};
  RoleCounts roles;
  Rational audit_threshold{3, 5};        // alpha, preliminary audits
  Rational arbitration_threshold{3, 5};  // rebuttal acceptance
  // One lottery ticket per member by default; when set, tickets scale with
  // members' Governance holdings.
  bool weighted_lottery{false};

  void write_canonical(CanonicalWriter& w) const;
};

// Largest-remainder (Hamilton) apportionment of `total_seats` over party
// Governance-token sums; remainder ties broken by lexicographic party id.
std::map<std::string, int> allocate_seats(const std::map<std::string, Amount>& party_tokens,
                                          int total_seats);

// Hash lottery: seat j goes to the member minimizing
// digest(seed, party, j, member). The same member may win several seats.
// A non-empty weights map gives each member that many tickets
// (digest(seed, party, j, member, ticket)); used by the weighted_lottery
// config switch with Governance holdings as weights.
std::vector<AccountId> select_members(const Party& party, int seat_count,
                                      const std::string& seed_hex,
                                      const std::map<AccountId, Amount>& weights = {});

// Seed-keyed role assignment over selected seats. Seats are ranked by a
// per-seat lottery key; the lowest-key seats become Arbitral, then
// Senatorial, then Chief. An active Nomination divides nominated holders'
// arbitral keys by the boost factor, which multiplies their selection odds.
// platform_reserved arbitral seats (if any) are re-assigned to
// `platform_account` in ranked order.
Assembly assign_roles(Epoch epoch, const std::string& seed_hex,
                      std::vector<Seat> selected, const RoleCounts& counts,
                      const std::optional<Nomination>& nomination,
                      int platform_reserved, const AccountId& platform_account);

struct GovernanceState {
  std::map<std::string, Party> parties;
  // account -> party id, for current members
  std::map<AccountId, std::string> membership;
  // staged membership changes, applied at the next election boundary:
  // value = party id to join, or "" to leave
  std::map<AccountId, std::string> pending_membership;
  Assembly assembly;
  std::optional<Nomination> nomination;
  std::uint64_t next_party{0};

  void apply_pending_membership();
  void write_canonical(CanonicalWriter& w) const;
};

// Party ops. These validate against the ledger's Governance balances.
const Party& form_party(GovernanceState& gov, const Ledger& ledger,
                        const AccountId& founder, const std::string& charter_digest,
                        Amount min_governance);
void join_party(GovernanceState& gov, const Ledger& ledger, const AccountId& node,
                const std::string& party_id);
void leave_party(GovernanceState& gov, const AccountId& node);

// Full election for an epoch: apportionment over current membership's
// Governance holdings, hash-lottery selection, role assignment.
Assembly run_election(const GovernanceState& gov, const Ledger& ledger, Epoch epoch,
                      const std::string& seed_hex, const ParameterSet& params,
                      const AccountId& platform_account);

}  // namespace dcc
