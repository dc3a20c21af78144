#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dcc/canonical.hpp"
#include "dcc/governance.hpp"
#include "dcc/ledger.hpp"
#include "dcc/rational.hpp"
#include "dcc/types.hpp"

namespace dcc {

enum class ProjectState : int {
  Draft = 0,
  Funding,
  AwaitingAcceptance,
  Active,
  Suspended,
  Completed,
  Failed,
};

std::string_view to_string(ProjectState state);

enum class SuspendCause : int { CouncilAlert = 0, CreditWarningLine = 1 };
std::string_view to_string(SuspendCause cause);
SuspendCause suspend_cause_from_string(std::string_view name);

struct Tranche {
  int index{0};
  Rational fraction{1, 1};
  Rational labor_conversion{1, 10};  // lambda
  bool released{false};
};

struct Council {
  // weight = investment_weight * investment share
  //        + governance_weight * normalized Governance holding
  std::vector<std::pair<AccountId, Rational>> members;
  std::set<AccountId> supervisors;  // arbitral nodes at activation
};

struct Project {
  std::string id;
  AccountId creator;
  Amount target{0};
  Epoch deadline_epoch{0};
  Rational marketing{0, 1};             // m
  Rational acceptance_threshold{1, 2};  // theta
  std::vector<Tranche> tranches;
  std::string fund_use_plan_digest;
  std::string reward_contract_digest;
  ProjectState state{ProjectState::Draft};
  Amount raised{0};
  std::map<AccountId, Amount> investments;  // merged per investor
  std::map<AccountId, Amount> pledges;      // merged per pledger, Labor
  std::string funding_escrow;               // Capital while Funding
  std::string pledge_escrow;                // Labor while Funding
  std::string production_escrow;            // Capital after success
  Amount production_fund{0};
  Amount production_released{0};
  std::map<AccountId, bool> acceptance_votes;
  bool needs_republish{false};
  Epoch activated_epoch{-1};
  int next_tranche{0};
  Council council;
  // funder -> next tranche period allowed to rate (satisfaction feedback)
  std::map<AccountId, int> satisfaction_next_period;

  void write_canonical(CanonicalWriter& w) const;
};

struct SettlementShare {
  AccountId account;
  Amount capital_returned{0};
  Amount marketing_reward{0};
  Amount labor_refunded{0};
  Amount labor_burned{0};
};

struct SettlementReport {
  std::string project;
  bool success{false};
  Amount raised{0};
  Amount target{0};
  Rational funded_rate{0, 1};
  Amount marketing_pool{0};
  Amount production_fund{0};
  Amount capital_returned_total{0};
  Amount labor_refunded_total{0};
  Amount labor_burned_total{0};
  std::vector<SettlementShare> shares;  // sorted by account
};

struct CrowdfundingConfig {
  Amount creator_credit_floor{40};
  Rational council_investment_weight{7, 10};
  Rational council_governance_weight{3, 10};
  int tranche_period{2};  // epochs between tranche releases
  Amount gas_fee{1};
  int max_active_projects{2};
};

struct CrowdfundingState {
  std::map<std::string, Project> projects;
  std::uint64_t next_project{0};
  // terminal outcome tallies, kept for the canonical snapshot after pruning
  std::int64_t completed_count{0};
  std::int64_t failed_count{0};

  Project& project(const std::string& id);
  const Project& project(const std::string& id) const;
  void write_canonical(CanonicalWriter& w) const;
};

// -- operations (validate, then mutate; effects record all token movement) --

Project& create_project(CrowdfundingState& cf, const Ledger& ledger,
                        Amount creator_credit, const CrowdfundingConfig& cfg,
                        const AccountId& creator, Amount target, Epoch deadline,
                        Epoch now, const Rational& marketing,
                        const std::vector<std::pair<Rational, Rational>>& tranches,
                        const Rational& acceptance_threshold);

void publish_contracts(Project& project, const std::string& fund_use_plan_digest,
                       const std::string& reward_contract_digest);

void invest(Project& project, Ledger& ledger, const AccountId& investor,
            Amount capital_amount, Epoch now, Effects& fx);

void pledge(Project& project, Ledger& ledger, const AccountId& evaluator,
            Amount labor_amount, Effects& fx);

SettlementReport settle_at_deadline(Project& project, Ledger& ledger, Epoch now,
                                    Effects& fx);

// Returns true when the acceptance gate was reached and the project went
// Active (council instantiated from current assembly supervisors).
bool accept_contracts(Project& project, const Ledger& ledger, const Assembly& assembly,
                      const CrowdfundingConfig& cfg, const AccountId& funder,
                      bool vote, Epoch now);

struct TrancheRelease {
  int index{0};
  Amount total{0};
  Amount capital_to_creator{0};
  Amount capital_converted{0};
  Amount labor_to_creator{0};
  bool completed{false};
};

TrancheRelease release_tranche(Project& project, Ledger& ledger,
                               const ExchangeRate& rate, int tranche_index,
                               bool council_approved, Effects& fx);

void suspend_funds(Project& project, SuspendCause cause);
void reinstate_project(Project& project, bool council_approved);

// Weighted council tally; approvals must reach 1/2 of total weight.
bool council_approves(const Project& project, const std::set<AccountId>& yes_votes);

}  // namespace dcc
