#pragma once

#include <deque>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "dcc/config.hpp"
#include "dcc/crowdfunding.hpp"
#include "dcc/econ.hpp"
#include "dcc/governance.hpp"
#include "dcc/ledger.hpp"
#include "dcc/supervision.hpp"

namespace dcc {

// One record of the append-only event log. The payload holds the op inputs
// under "i" and the recomputable outputs (including token effects) under
// "o"; state_hash digests the canonical serialized post-state.
struct Event {
  std::uint64_t seq{0};
  Epoch epoch{0};
  std::string op;
  Json payload;
  std::string state_hash;

  std::string to_line() const;
  static Event from_line(const std::string& line);
};

// Per-epoch supervision tallies kept for the regulator's metrics window.
struct EpochTally {
  Epoch epoch{0};
  std::int64_t accepted{0};
  std::int64_t revoked{0};
};

// The event-sourced state machine: the single writer over all module state.
// Every mutation happens via apply(op, inputs); each application appends one
// event whose canonical line fully determines the transition on replay.
class World {
 public:
  World();

  // Dispatch entry. Validates, mutates, appends; returns the appended event.
  Event apply(const std::string& op, const Json& inputs);

  // -- convenience wrappers (build inputs and call apply) -------------------
  Event genesis(const Json& scenario_config);
  Event open_account(const AccountId& id);
  Event mint_labor(const AccountId& account, Amount amount, MintReason reason);
  Event convert_labor_to_capital(const AccountId& account, Amount labor);
  Event start_governance_conversion(const AccountId& account, Amount labor,
                                           int phases);
  Event convert_governance_to_labor(const AccountId& account, Amount governance);
  Event transfer(const AccountId& from, const AccountId& to, TokenKind kind,
                        Amount amount);
  Event pay_gas(const AccountId& account, Amount capital);
  Event update_exchange_rate(const Rational& supply_signal,
                                    const Rational& demand_signal);
  Event distribute_pools();
  Event advance_epoch();

  Event create_project(const AccountId& creator, Amount target, Epoch deadline,
                              const Rational& marketing, const Rational& theta,
                              const std::vector<std::pair<Rational, Rational>>& tranches);
  Event publish_contracts(const std::string& project,
                                 const std::string& fund_use_plan_digest,
                                 const std::string& reward_contract_digest);
  Event invest(const std::string& project, const AccountId& investor,
                      Amount amount);
  Event pledge(const std::string& project, const AccountId& evaluator,
                      Amount amount);
  Event settle_project(const std::string& project);
  Event accept_vote(const std::string& project, const AccountId& funder,
                           bool vote);
  Event release_tranche(const std::string& project, int index,
                               const std::vector<AccountId>& yes_votes);
  Event suspend_project(const std::string& project, SuspendCause cause);
  Event reinstate(const std::string& project,
                         const std::vector<AccountId>& yes_votes);

  Event form_party(const AccountId& founder, const std::string& charter_digest);
  Event join_party(const AccountId& node, const std::string& party);
  Event leave_party(const AccountId& node);
  Event elect_assembly();
  Event nominate_arbitral(const AccountId& chief,
                                 const std::vector<AccountId>& candidates,
                                 const Rational& boost);
  Event adjust_incentive_pool(const AccountId& chief, const Rational& split);
  Event amend_rules(const AccountId& proposer,
                           const std::vector<AccountId>& yes_votes, const Json& delta);
  Event impeach_chief(const AccountId& proposer,
                             const std::vector<AccountId>& yes_votes);
  Event phase_down_platform();

  Event submit_content(const AccountId& creator, const std::string& digest);
  Event submit_tipoff(const AccountId& reporter, bool targets_project,
                             const std::string& target, TipOffCategory category,
                             Amount deposit);
  Event submit_rebuttal(const std::string& tipoff, const std::string& evidence);
  Event cast_vote(const std::string& interval, const AccountId& voter,
                         bool approve);
  Event close_interval(const std::string& interval);
  Event tipoff_default_judgment(const std::string& tipoff);
  Event record_satisfaction(const std::string& project, const AccountId& funder,
                                   int rating);
  Event credit_escalation(const std::string& project);
  Event regulate_epoch();

  // -- read access -----------------------------------------------------------
  const Ledger& ledger() const { return ledger_; }
  const GovernanceState& governance() const { return governance_; }
  const CrowdfundingState& crowdfunding() const { return crowdfunding_; }
  const SupervisionState& supervision() const { return supervision_; }
  const ParameterSet& params() const { return params_; }
  const RegulatorState& regulator() const { return regulator_; }
  const ExchangeRate& exchange_rate() const { return rate_; }
  const WorldConfig& config() const { return config_; }
  Epoch epoch() const { return epoch_; }
  const std::vector<Event>& events() const { return events_; }
  const std::string& state_hash() const { return last_state_hash_; }
  bool genesis_applied() const { return genesis_applied_; }
  const std::deque<EpochTally>& tallies() const { return tallies_; }

  std::string canonical_snapshot() const;
  // Valid-information ratio over the rolling metrics window, clamped to [0,1].
  Rational windowed_valid_ratio() const;

  // Non-mutating preview of the warning-line action for a project.
  EscalationAction peek_warning_line(const std::string& project_id) const;

  // True when, after staged membership changes apply, at least one party
  // would hold Governance tokens.
  bool election_possible() const;

  // Registered op names, for operation-surface audits.
  static std::vector<std::string> op_names();

 private:
  using Handler = void (World::*)(const Json&, Json&, Effects&);
  static const std::map<std::string, Handler>& registry();

  Event dispatch(const std::string& op, const Json& inputs);
  std::string epoch_seed() const;
  void bump_tally(bool revoked);
  void note_accepted_creator(const AccountId& creator);

  // handlers
  void op_genesis(const Json& in, Json& out, Effects& fx);
  void op_open_account(const Json& in, Json& out, Effects& fx);
  void op_mint_labor(const Json& in, Json& out, Effects& fx);
  void op_convert_labor_to_capital(const Json& in, Json& out, Effects& fx);
  void op_start_governance_conversion(const Json& in, Json& out, Effects& fx);
  void op_convert_governance_to_labor(const Json& in, Json& out, Effects& fx);
  void op_transfer(const Json& in, Json& out, Effects& fx);
  void op_pay_gas(const Json& in, Json& out, Effects& fx);
  void op_update_rate(const Json& in, Json& out, Effects& fx);
  void op_distribute_pools(const Json& in, Json& out, Effects& fx);
  void op_advance_epoch(const Json& in, Json& out, Effects& fx);
  void op_create_project(const Json& in, Json& out, Effects& fx);
  void op_publish_contracts(const Json& in, Json& out, Effects& fx);
  void op_invest(const Json& in, Json& out, Effects& fx);
  void op_pledge(const Json& in, Json& out, Effects& fx);
  void op_settle_project(const Json& in, Json& out, Effects& fx);
  void op_accept_vote(const Json& in, Json& out, Effects& fx);
  void op_release_tranche(const Json& in, Json& out, Effects& fx);
  void op_suspend_project(const Json& in, Json& out, Effects& fx);
  void op_reinstate_project(const Json& in, Json& out, Effects& fx);
  void op_form_party(const Json& in, Json& out, Effects& fx);
  void op_join_party(const Json& in, Json& out, Effects& fx);
  void op_leave_party(const Json& in, Json& out, Effects& fx);
  void op_elect_assembly(const Json& in, Json& out, Effects& fx);
  void op_nominate_arbitral(const Json& in, Json& out, Effects& fx);
  void op_adjust_incentive_pool(const Json& in, Json& out, Effects& fx);
  void op_amend_rules(const Json& in, Json& out, Effects& fx);
  void op_impeach_chief(const Json& in, Json& out, Effects& fx);
  void op_phase_down_platform(const Json& in, Json& out, Effects& fx);
  void op_submit_content(const Json& in, Json& out, Effects& fx);
  void op_submit_tipoff(const Json& in, Json& out, Effects& fx);
  void op_submit_rebuttal(const Json& in, Json& out, Effects& fx);
  void op_cast_vote(const Json& in, Json& out, Effects& fx);
  void op_close_interval(const Json& in, Json& out, Effects& fx);
  void op_tipoff_default(const Json& in, Json& out, Effects& fx);
  void op_record_satisfaction(const Json& in, Json& out, Effects& fx);
  void op_credit_escalation(const Json& in, Json& out, Effects& fx);
  void op_regulate(const Json& in, Json& out, Effects& fx);

  void judge_tipoff(TipOff& tipoff, bool refuted, Json& out, Effects& fx);
  void archive_stale_records();

  WorldConfig config_;
  std::string config_digest_;
  bool genesis_applied_{false};
  Epoch epoch_{0};
  Ledger ledger_;
  GovernanceState governance_;
  CrowdfundingState crowdfunding_;
  SupervisionState supervision_;
  ParameterSet params_;
  RegulatorState regulator_;
  ExchangeRate rate_;
  std::deque<EpochTally> tallies_;
  // creators of content accepted in the current epoch (pool distribution)
  std::map<AccountId, std::int64_t> epoch_accepted_creators_;
  std::string archive_digest_;
  std::int64_t archived_contents_{0};

  std::vector<Event> events_;
  std::string last_state_hash_;
  mutable std::string snapshot_buffer_;
};

}  // namespace dcc
