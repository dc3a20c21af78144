#include "dcc/world.hpp"

#include <algorithm>

#include "dcc/allocate.hpp"
#include "dcc/hash.hpp"

namespace dcc {

namespace {

const Json& jfield(const Json& in, const char* key) {
  auto it = in.find(key);
  require(it != in.end(), Errc::ParseError, std::string("missing field '") + key + "'");
  return *it;
}

std::string jstr(const Json& in, const char* key) {
  return jfield(in, key).get<std::string>();
}

Amount jint(const Json& in, const char* key) {
  return jfield(in, key).get<Amount>();
}

bool jbool(const Json& in, const char* key) { return jfield(in, key).get<bool>(); }

Rational jrat(const Json& in, const char* key) {
  const Json& v = jfield(in, key);
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  return Rational::parse(v.get<std::string>());
}

std::set<AccountId> jaccounts(const Json& in, const char* key) {
  std::set<AccountId> out;
  for (const Json& v : jfield(in, key)) out.insert(v.get<std::string>());
  return out;
}

Json accounts_json(const std::set<AccountId>& accounts) {
  Json out = Json::array();
  for (const AccountId& a : accounts) out.push_back(a);
  return out;
}

}  // namespace

std::string Event::to_line() const {
  Json record;
  record["epoch"] = epoch;
  record["op"] = op;
  record["payload"] = payload;
  record["seq"] = seq;
  record["state_hash"] = state_hash;
  return record.dump();
}

Event Event::from_line(const std::string& line) {
  Json record = Json::parse(line, nullptr, false);
  require(!record.is_discarded() && record.is_object(), Errc::CorruptLog,
          "unparseable event record");
  Event ev;
  try {
    ev.seq = record.at("seq").get<std::uint64_t>();
    ev.epoch = record.at("epoch").get<Epoch>();
    ev.op = record.at("op").get<std::string>();
    ev.payload = record.at("payload");
    ev.state_hash = record.at("state_hash").get<std::string>();
  } catch (const Json::exception& e) {
    fail(Errc::CorruptLog, std::string("bad event record: ") + e.what());
  }
  return ev;
}

World::World() = default;

const std::map<std::string, World::Handler>& World::registry() {
  static const std::map<std::string, Handler> reg = {
      {"genesis", &World::op_genesis},
      {"open_account", &World::op_open_account},
      {"mint_labor", &World::op_mint_labor},
      {"convert_labor_to_capital", &World::op_convert_labor_to_capital},
      {"start_governance_conversion", &World::op_start_governance_conversion},
      {"convert_governance_to_labor", &World::op_convert_governance_to_labor},
      {"transfer", &World::op_transfer},
      {"pay_gas", &World::op_pay_gas},
      {"update_rate", &World::op_update_rate},
      {"distribute_pools", &World::op_distribute_pools},
      {"advance_epoch", &World::op_advance_epoch},
      {"create_project", &World::op_create_project},
      {"publish_contracts", &World::op_publish_contracts},
      {"invest", &World::op_invest},
      {"pledge", &World::op_pledge},
      {"settle_project", &World::op_settle_project},
      {"accept_vote", &World::op_accept_vote},
      {"release_tranche", &World::op_release_tranche},
      {"suspend_project", &World::op_suspend_project},
      {"reinstate_project", &World::op_reinstate_project},
      {"form_party", &World::op_form_party},
      {"join_party", &World::op_join_party},
      {"leave_party", &World::op_leave_party},
      {"elect_assembly", &World::op_elect_assembly},
      {"nominate_arbitral", &World::op_nominate_arbitral},
      {"adjust_incentive_pool", &World::op_adjust_incentive_pool},
      {"amend_rules", &World::op_amend_rules},
      {"impeach_chief", &World::op_impeach_chief},
      {"phase_down_platform", &World::op_phase_down_platform},
      {"submit_content", &World::op_submit_content},
      {"submit_tipoff", &World::op_submit_tipoff},
      {"submit_rebuttal", &World::op_submit_rebuttal},
      {"cast_vote", &World::op_cast_vote},
      {"close_interval", &World::op_close_interval},
      {"tipoff_default", &World::op_tipoff_default},
      {"record_satisfaction", &World::op_record_satisfaction},
      {"credit_escalation", &World::op_credit_escalation},
      {"regulate", &World::op_regulate},
  };
  return reg;
}

std::vector<std::string> World::op_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

Event World::apply(const std::string& op, const Json& inputs) {
  return dispatch(op, inputs);
}

Event World::dispatch(const std::string& op, const Json& inputs) {
  auto it = registry().find(op);
  require(it != registry().end(), Errc::UnknownOp, op);
  require(genesis_applied_ || op == "genesis", Errc::WrongState,
          "genesis must be the first event");
  const Epoch at_epoch = epoch_;
  Json out = Json::object();
  Effects fx;
  try {
    (this->*(it->second))(inputs, out, fx);
  } catch (const Json::exception& e) {
    fail(Errc::ParseError, "op " + op + ": " + e.what());
  }
  Json effects = Json::array();
  for (const Effect& e : fx) effects.push_back(Json::array({e.bucket, e.delta}));
  out["effects"] = std::move(effects);
  Json payload;
  payload["i"] = inputs;
  payload["o"] = std::move(out);

  Event ev;
  ev.seq = events_.size();
  ev.epoch = at_epoch;
  ev.op = op;
  ev.payload = std::move(payload);
  ev.state_hash = sha256_hex(canonical_snapshot());
  last_state_hash_ = ev.state_hash;
  events_.push_back(std::move(ev));
  return events_.back();
}

std::string World::epoch_seed() const {
  return digest_fields({last_state_hash_, std::to_string(epoch_)}).hex();
}

void World::bump_tally(bool revoked) {
  for (auto& tally : tallies_) {
    if (tally.epoch == epoch_) {
      (revoked ? tally.revoked : tally.accepted)++;
      return;
    }
  }
}

void World::note_accepted_creator(const AccountId& creator) {
  epoch_accepted_creators_[creator]++;
}

Rational World::windowed_valid_ratio() const {
  std::int64_t accepted = 0;
  std::int64_t revoked = 0;
  for (const EpochTally& tally : tallies_) {
    accepted += tally.accepted;
    revoked += tally.revoked;
  }
  if (accepted == 0) return Rational(1);
  Rational ratio(accepted - revoked, accepted);
  return clamp(ratio, Rational(0), Rational(1));
}

// ---------------------------------------------------------------------------
// handlers
// ---------------------------------------------------------------------------

void World::op_genesis(const Json& in, Json& out, Effects& fx) {
  require(!genesis_applied_, Errc::WrongState, "genesis already applied");
  config_ = WorldConfig::from_json(in);
  config_digest_ = sha256_hex(in.dump());
  params_ = config_.params;
  rate_ = config_.rate;
  regulator_ = RegulatorState{};
  ledger_.open_account(config_.platform_account);
  tallies_.push_back(EpochTally{0, 0, 0});
  genesis_applied_ = true;
  out["config_digest"] = config_digest_;
  (void)fx;
}

void World::op_open_account(const Json& in, Json& out, Effects& fx) {
  ledger_.open_account(jstr(in, "account"));
  (void)out;
  (void)fx;
}

void World::op_mint_labor(const Json& in, Json& out, Effects& fx) {
  MintReason reason = mint_reason_from_string(jstr(in, "reason"));
  ledger_.mint_labor(jstr(in, "account"), jint(in, "amount"), reason, fx);
  (void)out;
}

void World::op_convert_labor_to_capital(const Json& in, Json& out, Effects& fx) {
  out["capital"] =
      ledger_.convert_labor_to_capital(jstr(in, "account"), jint(in, "labor"), rate_, fx);
}

void World::op_start_governance_conversion(const Json& in, Json& out, Effects& fx) {
  const PendingConversion& conv = ledger_.start_governance_conversion(
      jstr(in, "account"), jint(in, "labor"), static_cast<int>(jint(in, "phases")),
      epoch_, params_.labor_to_governance, fx);
  out["conversion"] = conv.id;
  out["per_phase"] = conv.per_phase;
}

void World::op_convert_governance_to_labor(const Json& in, Json& out, Effects& fx) {
  out["labor"] = ledger_.convert_governance_to_labor(
      jstr(in, "account"), jint(in, "governance"), params_.labor_to_governance, fx);
}

void World::op_transfer(const Json& in, Json& out, Effects& fx) {
  ledger_.transfer(jstr(in, "from"), jstr(in, "to"),
                   token_kind_from_string(jstr(in, "kind")), jint(in, "amount"), fx);
  (void)out;
}

void World::op_pay_gas(const Json& in, Json& out, Effects& fx) {
  out["pool_labor"] = ledger_.pay_gas(jstr(in, "account"), jint(in, "capital"), rate_, fx);
}

void World::op_update_rate(const Json& in, Json& out, Effects& fx) {
  Rational supply = jrat(in, "supply");
  Rational demand = jrat(in, "demand");
  rate_.labor_per_capital =
      update_rate(rate_.labor_per_capital, config_.rate_policy, supply, demand);
  out["rate"] = rate_.labor_per_capital.str();
  if (in.contains("peg_index")) {
    Rational index = jrat(in, "peg_index");
    out["peg_violation"] =
        index < rate_.gold_band_lower || index > rate_.gold_band_upper;
  }
  (void)fx;
}

void World::op_distribute_pools(const Json& in, Json& out, Effects& fx) {
  (void)in;
  Amount labor_side = 0;
  Amount governance_side = 0;
  ledger_.pool_move_split(params_.incentive_pool_split, labor_side, governance_side, fx);

  Json labor_paid = Json::object();
  if (labor_side > 0 && !epoch_accepted_creators_.empty()) {
    std::map<std::string, Amount> weights(epoch_accepted_creators_.begin(),
                                          epoch_accepted_creators_.end());
    for (const auto& [account, share] : allocate_largest_remainder(labor_side, weights)) {
      if (share > 0) {
        ledger_.pool_pay(false, account, share, fx);
        labor_paid[account] = share;
      }
    }
  }
  Json governance_paid = Json::object();
  Amount gov_pool = ledger_.governance_reward_pool();
  if (gov_pool > 0 && governance_.assembly.valid()) {
    std::map<std::string, Amount> seats_held;
    for (const Seat& seat : governance_.assembly.seats) seats_held[seat.holder]++;
    for (const auto& [account, share] : allocate_largest_remainder(gov_pool, seats_held)) {
      if (share > 0) {
        ledger_.pool_pay(true, account, share, fx);
        governance_paid[account] = share;
      }
    }
  }
  out["labor_paid"] = std::move(labor_paid);
  out["governance_paid"] = std::move(governance_paid);
}

void World::op_advance_epoch(const Json& in, Json& out, Effects& fx) {
  (void)in;
  out["governance_credited"] = ledger_.advance_pending_conversions(fx);
  archive_stale_records();
  epoch_++;
  tallies_.push_back(EpochTally{epoch_, 0, 0});
  while (static_cast<int>(tallies_.size()) > config_.regulator.metrics_window) {
    tallies_.pop_front();
  }
  epoch_accepted_creators_.clear();
  out["epoch"] = epoch_;
}

void World::op_create_project(const Json& in, Json& out, Effects& fx) {
  (void)fx;
  std::vector<std::pair<Rational, Rational>> tranches;
  for (const Json& t : jfield(in, "tranches")) {
    require(t.is_array() && t.size() == 2, Errc::ParseError,
            "tranche entries must be [fraction, labor_conversion]");
    auto parse_r = [](const Json& v) {
      return v.is_number_integer() ? Rational(v.get<std::int64_t>())
                                   : Rational::parse(v.get<std::string>());
    };
    tranches.push_back({parse_r(t[0]), parse_r(t[1])});
  }
  const AccountId creator = jstr(in, "creator");
  Amount credit = supervision_.score_of(credit_key_account(creator), config_.supervision);
  Project& project = dcc::create_project(
      crowdfunding_, ledger_, credit, config_.crowdfunding, creator, jint(in, "target"),
      jint(in, "deadline"), epoch_, jrat(in, "marketing"), tranches, jrat(in, "theta"));
  out["project"] = project.id;
}

void World::op_publish_contracts(const Json& in, Json& out, Effects& fx) {
  (void)out;
  (void)fx;
  dcc::publish_contracts(crowdfunding_.project(jstr(in, "project")),
                         jstr(in, "fund_use_plan"), jstr(in, "reward_contract"));
}

void World::op_invest(const Json& in, Json& out, Effects& fx) {
  Project& project = crowdfunding_.project(jstr(in, "project"));
  dcc::invest(project, ledger_, jstr(in, "investor"), jint(in, "amount"), epoch_, fx);
  out["raised"] = project.raised;
}

void World::op_pledge(const Json& in, Json& out, Effects& fx) {
  Project& project = crowdfunding_.project(jstr(in, "project"));
  dcc::pledge(project, ledger_, jstr(in, "evaluator"), jint(in, "amount"), fx);
  (void)out;
}

void World::op_settle_project(const Json& in, Json& out, Effects& fx) {
  Project& project = crowdfunding_.project(jstr(in, "project"));
  SettlementReport report = settle_at_deadline(project, ledger_, epoch_, fx);
  out["success"] = report.success;
  out["raised"] = report.raised;
  out["target"] = report.target;
  out["funded_rate"] = report.funded_rate.str();
  out["marketing_pool"] = report.marketing_pool;
  out["production_fund"] = report.production_fund;
  out["capital_returned"] = report.capital_returned_total;
  out["labor_refunded"] = report.labor_refunded_total;
  out["labor_burned"] = report.labor_burned_total;
  Json shares = Json::array();
  for (const SettlementShare& share : report.shares) {
    Json row;
    row["account"] = share.account;
    row["capital_returned"] = share.capital_returned;
    row["labor_burned"] = share.labor_burned;
    row["labor_refunded"] = share.labor_refunded;
    row["marketing_reward"] = share.marketing_reward;
    shares.push_back(std::move(row));
  }
  out["shares"] = std::move(shares);
}

void World::op_accept_vote(const Json& in, Json& out, Effects& fx) {
  (void)fx;
  Project& project = crowdfunding_.project(jstr(in, "project"));
  bool activated =
      accept_contracts(project, ledger_, governance_.assembly, config_.crowdfunding,
                       jstr(in, "funder"), jbool(in, "vote"), epoch_);
  out["activated"] = activated;
  out["needs_republish"] = project.needs_republish;
  if (activated) {
    Json council = Json::array();
    for (const auto& [account, weight] : project.council.members) {
      council.push_back(Json::array({account, weight.str()}));
    }
    out["council"] = std::move(council);
    out["supervisors"] = accounts_json(project.council.supervisors);
  }
}

void World::op_release_tranche(const Json& in, Json& out, Effects& fx) {
  Project& project = crowdfunding_.project(jstr(in, "project"));
  std::set<AccountId> yes = jaccounts(in, "yes_votes");
  bool approved = council_approves(project, yes);
  TrancheRelease release =
      dcc::release_tranche(project, ledger_, rate_, static_cast<int>(jint(in, "index")),
                           approved, fx);
  out["total"] = release.total;
  out["capital_to_creator"] = release.capital_to_creator;
  out["capital_converted"] = release.capital_converted;
  out["labor_to_creator"] = release.labor_to_creator;
  out["completed"] = release.completed;
}

void World::op_suspend_project(const Json& in, Json& out, Effects& fx) {
  (void)out;
  (void)fx;
  suspend_funds(crowdfunding_.project(jstr(in, "project")),
                suspend_cause_from_string(jstr(in, "cause")));
}

void World::op_reinstate_project(const Json& in, Json& out, Effects& fx) {
  (void)out;
  (void)fx;
  Project& project = crowdfunding_.project(jstr(in, "project"));
  reinstate_project(project, council_approves(project, jaccounts(in, "yes_votes")));
}

void World::op_form_party(const Json& in, Json& out, Effects& fx) {
  (void)fx;
  const Party& party = dcc::form_party(governance_, ledger_, jstr(in, "founder"),
                                       jstr(in, "charter"), params_.party_min_governance);
  out["party"] = party.id;
}

void World::op_join_party(const Json& in, Json& out, Effects& fx) {
  (void)out;
  (void)fx;
  dcc::join_party(governance_, ledger_, jstr(in, "node"), jstr(in, "party"));
}

void World::op_leave_party(const Json& in, Json& out, Effects& fx) {
  (void)out;
  (void)fx;
  dcc::leave_party(governance_, jstr(in, "node"));
}

void World::op_elect_assembly(const Json& in, Json& out, Effects& fx) {
  (void)in;
  (void)fx;
  governance_.apply_pending_membership();
  std::string seed = epoch_seed();
  Assembly assembly = run_election(governance_, ledger_, epoch_, seed, params_,
                                   config_.platform_account);
  governance_.assembly = assembly;
  // A nomination boosts one arbitral selection only.
  if (governance_.nomination && governance_.nomination->epoch_effective <= epoch_) {
    governance_.nomination.reset();
  }
  out["seed"] = seed;
  Json seats = Json::array();
  for (const Seat& seat : assembly.seats) {
    Json row;
    row["holder"] = seat.holder;
    row["index"] = seat.index;
    row["party"] = seat.party;
    row["role"] = std::string(to_string(seat.role));
    seats.push_back(std::move(row));
  }
  out["seats"] = std::move(seats);
}

void World::op_nominate_arbitral(const Json& in, Json& out, Effects& fx) {
  (void)fx;
  const AccountId chief = jstr(in, "chief");
  require(governance_.assembly.valid() &&
              governance_.assembly.holds_role(chief, Role::Chief),
          Errc::NotChief, chief);
  Rational boost = jrat(in, "boost");
  require(boost > Rational(1), Errc::OutOfBounds, "boost must exceed 1");
  Nomination nomination;
  nomination.epoch_effective = epoch_ + 1;
  nomination.candidates = jaccounts(in, "candidates");
  nomination.boost = boost;
  governance_.nomination = nomination;
  out["actor_role"] = "chief";
}

void World::op_adjust_incentive_pool(const Json& in, Json& out, Effects& fx) {
  (void)fx;
  const AccountId chief = jstr(in, "chief");
  require(governance_.assembly.valid() &&
              governance_.assembly.holds_role(chief, Role::Chief),
          Errc::NotChief, chief);
  Rational split = jrat(in, "split");
  require(split >= params_.split_min && split <= params_.split_max, Errc::OutOfBounds,
          "split " + split.str() + " outside [" + params_.split_min.str() + "," +
              params_.split_max.str() + "]");
  params_.incentive_pool_split = split;
  out["split"] = split.str();
  out["actor_role"] = "chief";
}

void World::op_amend_rules(const Json& in, Json& out, Effects& fx) {
  (void)fx;
  const AccountId proposer = jstr(in, "proposer");
  require(governance_.assembly.valid(), Errc::NoAssembly, "no sitting assembly");
  // Senatorial seats legislate; chief nodes may forward proposals to them.
  require(governance_.assembly.holds_role(proposer, Role::Senatorial) ||
              governance_.assembly.holds_role(proposer, Role::Chief),
          Errc::NotSenatorial, proposer);
  std::set<AccountId> yes = jaccounts(in, "yes_votes");
  std::set<AccountId> bench = governance_.assembly.holders_with(Role::Senatorial);
  Amount approvals = 0;
  for (const AccountId& voter : yes) {
    if (bench.count(voter)) approvals++;
  }
  require(!bench.empty() && Rational(approvals, static_cast<Amount>(bench.size())) >=
                                params_.amendment_supermajority,
          Errc::QuorumNotMet,
          std::to_string(approvals) + " of " + std::to_string(bench.size()));
  // The delta is a partial params object; absent fields keep current values.
  params_ = apply_params_delta(params_, jfield(in, "delta"));
  out["approvals"] = approvals;
  out["bench"] = static_cast<Amount>(bench.size());
  out["actor_role"] = governance_.assembly.holds_role(proposer, Role::Senatorial)
                          ? "senatorial"
                          : "chief";
}

void World::op_impeach_chief(const Json& in, Json& out, Effects& fx) {
  (void)fx;
  const AccountId proposer = jstr(in, "proposer");
  require(governance_.assembly.valid(), Errc::NoAssembly, "no sitting assembly");
  require(governance_.assembly.holds_role(proposer, Role::Senatorial),
          Errc::NotSenatorial, proposer);
  std::set<AccountId> yes = jaccounts(in, "yes_votes");
  std::set<AccountId> bench = governance_.assembly.holders_with(Role::Senatorial);
  Amount approvals = 0;
  for (const AccountId& voter : yes) {
    if (bench.count(voter)) approvals++;
  }
  require(!bench.empty() && Rational(approvals, static_cast<Amount>(bench.size())) >=
                                params_.impeachment_supermajority,
          Errc::QuorumNotMet,
          std::to_string(approvals) + " of " + std::to_string(bench.size()));

  Json replaced = Json::array();
  int refill = 0;
  for (Seat& seat : governance_.assembly.seats) {
    if (seat.role != Role::Chief) continue;
    const AccountId impeached = seat.holder;
    auto party_it = governance_.parties.find(seat.party);
    require(party_it != governance_.parties.end(), Errc::UnknownParty, seat.party);
    // Re-run the lottery for this seat with a fresh sub-seed, excluding the
    // impeached holder unless they are the party's only member.
    Party pool = party_it->second;
    if (pool.members.size() > 1) pool.members.erase(impeached);
    std::string sub_seed =
        digest_fields({governance_.assembly.seed_hex, "impeach",
                       std::to_string(refill++), std::to_string(seat.index)})
            .hex();
    seat.holder = select_members(pool, 1, sub_seed)[0];
    replaced.push_back(Json::array({impeached, seat.holder}));
  }
  out["replaced"] = std::move(replaced);
  out["actor_role"] = "senatorial";
}

void World::op_phase_down_platform(const Json& in, Json& out, Effects& fx) {
  (void)in;
  (void)fx;
  require(params_.platform_supervision_share > Rational(0), Errc::WrongState,
          "platform share already zero");
  Rational next = (params_.platform_supervision_share * params_.platform_decay)
                      .quantize_floor(1000000);
  if (next < params_.platform_cutoff) next = Rational(0);
  params_.platform_supervision_share = next;
  out["share"] = next.str();
}

void World::op_submit_content(const Json& in, Json& out, Effects& fx) {
  (void)fx;
  std::string interval_id;
  const ContentRecord& record =
      dcc::submit_content(supervision_, ledger_, config_.supervision,
                          jstr(in, "creator"), jstr(in, "digest"), epoch_, &interval_id);
  out["content"] = record.id;
  out["interval"] = interval_id;
}

void World::op_submit_tipoff(const Json& in, Json& out, Effects& fx) {
  bool targets_project = jbool(in, "targets_project");
  const std::string target = jstr(in, "target");
  if (targets_project) {
    crowdfunding_.project(target);  // must exist
  }
  std::string interval_id;
  const TipOff& tipoff = dcc::submit_tipoff(
      supervision_, ledger_, config_.supervision, jstr(in, "reporter"), targets_project,
      target, tipoff_category_from_string(jstr(in, "category")), jint(in, "deposit"),
      epoch_, fx, &interval_id);
  out["tipoff"] = tipoff.id;
  out["interval"] = interval_id;
}

void World::op_submit_rebuttal(const Json& in, Json& out, Effects& fx) {
  (void)fx;
  std::string interval_id;
  dcc::submit_rebuttal(supervision_, config_.supervision, jstr(in, "tipoff"),
                       jstr(in, "evidence"), epoch_, &interval_id);
  out["interval"] = interval_id;
}

void World::op_cast_vote(const Json& in, Json& out, Effects& fx) {
  (void)out;
  (void)fx;
  dcc::cast_vote(supervision_, governance_.assembly, jstr(in, "interval"),
                 jstr(in, "voter"), jbool(in, "approve"), epoch_);
}

void World::judge_tipoff(TipOff& tipoff, bool refuted, Json& out, Effects& fx) {
  Json credit_rows = Json::array();
  if (refuted) {
    tipoff.state = TipOffState::RefutedSuccessfully;
    // Suspected false report: the whistleblower loses credit and the deposit.
    int score = supervision_.credit_apply(credit_key_account(tipoff.reporter),
                                          -config_.supervision.delta_false,
                                          config_.supervision);
    credit_rows.push_back(Json::array(
        {credit_key_account(tipoff.reporter), -config_.supervision.delta_false, score,
         "suspected false report"}));
    ledger_.escrow_burn(tipoff.deposit_escrow, tipoff.deposit, fx);
    out["judgment"] = "RefutedSuccessfully";
  } else {
    tipoff.state = TipOffState::Upheld;
    std::string subject;
    if (tipoff.targets_project) {
      subject = credit_key_project(tipoff.target_id);
    } else {
      ContentRecord& content = supervision_.content(tipoff.target_id);
      subject = credit_key_account(content.creator);
      // Forcibly destroy the rewarded Labor, clamped at the current balance;
      // any shortfall is logged rather than creating debt.
      Amount burned = ledger_.burn_labor_clamped(content.creator, content.reward_paid, fx);
      out["reward_destroyed"] = burned;
      out["shortfall"] = content.reward_paid - burned;
      content.status = ContentStatus::Revoked;
      supervision_.revoked_total++;
      bump_tally(true);
    }
    int score = supervision_.credit_apply(subject, -config_.supervision.delta_guilty,
                                          config_.supervision);
    credit_rows.push_back(Json::array(
        {subject, -config_.supervision.delta_guilty, score, "tip-off upheld"}));
    ledger_.escrow_release(tipoff.deposit_escrow, tipoff.reporter, tipoff.deposit, fx);
    Amount reward =
        floor_mul(config_.supervision.tipoff_reward, regulator_.incentive);
    if (reward > 0) {
      ledger_.mint_labor(tipoff.reporter, reward, MintReason::TipOffReward, fx);
    }
    out["reporter_reward"] = reward;
    out["judgment"] = "Upheld";
  }
  out["credit"] = std::move(credit_rows);
  out["tipoff"] = tipoff.id;
}

void World::op_close_interval(const Json& in, Json& out, Effects& fx) {
  const std::string interval_id = jstr(in, "interval");
  EvaluationInterval& interval = supervision_.interval(interval_id);
  require(epoch_ >= interval.close_epoch, Errc::IntervalOpen,
          interval_id + " closes at epoch " + std::to_string(interval.close_epoch));
  out["case"] = interval.case_id;
  out["kind"] = std::string(to_string(interval.kind));

  switch (interval.kind) {
    case IntervalKind::ContentAudit: {
      ContentRecord& content = supervision_.content(interval.case_id);
      bool passed =
          interval_passes(interval, governance_.assembly, params_.audit_threshold);
      out["passed"] = passed;
      if (passed) {
        content.status = ContentStatus::Accepted;
        Amount reward = floor_mul(config_.supervision.content_reward, regulator_.quota);
        if (reward > 0) {
          ledger_.mint_labor(content.creator, reward, MintReason::ContentReward, fx);
        }
        content.reward_paid = reward;
        supervision_.accepted_total++;
        bump_tally(false);
        note_accepted_creator(content.creator);
        out["reward"] = reward;
      } else {
        supervision_.dropped_total++;
        supervision_.contents.erase(interval.case_id);
      }
      break;
    }
    case IntervalKind::TipOffAudit: {
      TipOff& tipoff = supervision_.tipoff(interval.case_id);
      bool passed =
          interval_passes(interval, governance_.assembly, params_.audit_threshold);
      out["passed"] = passed;
      if (passed) {
        // Published; the accused is notified and the rebuttal window opens.
        tipoff.state = TipOffState::AwaitingRebuttal;
        tipoff.rebuttal_deadline = epoch_ + config_.supervision.rebuttal_window;
        out["rebuttal_deadline"] = tipoff.rebuttal_deadline;
      } else {
        tipoff.state = TipOffState::Dismissed;
        ledger_.escrow_release(tipoff.deposit_escrow, tipoff.reporter, tipoff.deposit, fx);
      }
      break;
    }
    case IntervalKind::Arbitration: {
      TipOff& tipoff = supervision_.tipoff(interval.case_id);
      require(tipoff.state == TipOffState::AwaitingRebuttal, Errc::WrongState,
              tipoff.id + " is " + std::string(to_string(tipoff.state)));
      bool refuted = interval_passes(interval, governance_.assembly,
                                     params_.arbitration_threshold);
      judge_tipoff(tipoff, refuted, out, fx);
      break;
    }
  }
  supervision_.intervals.erase(interval_id);
}

void World::op_tipoff_default(const Json& in, Json& out, Effects& fx) {
  TipOff& tipoff = supervision_.tipoff(jstr(in, "tipoff"));
  require(tipoff.state == TipOffState::AwaitingRebuttal && !tipoff.rebuttal_submitted,
          Errc::WrongState, tipoff.id + " is " + std::string(to_string(tipoff.state)));
  require(epoch_ > tipoff.rebuttal_deadline, Errc::IntervalOpen,
          "rebuttal window open until epoch " + std::to_string(tipoff.rebuttal_deadline));
  // No valid refutation by the deadline: default judgment against the target.
  judge_tipoff(tipoff, false, out, fx);
}

void World::op_record_satisfaction(const Json& in, Json& out, Effects& fx) {
  (void)fx;
  Project& project = crowdfunding_.project(jstr(in, "project"));
  const int rating = static_cast<int>(jint(in, "rating"));
  int score = dcc::record_satisfaction(supervision_, config_.supervision, project,
                                       jstr(in, "funder"), rating);
  out["score"] = score;
  out["credit"] = Json::array(
      {Json::array({credit_key_project(project.id),
                    rating * config_.supervision.satisfaction_weight, score,
                    "funder satisfaction rating"})});
}

void World::op_credit_escalation(const Json& in, Json& out, Effects& fx) {
  (void)fx;
  const std::string project_id = jstr(in, "project");
  bool active = false;
  auto it = crowdfunding_.projects.find(project_id);
  if (it != crowdfunding_.projects.end()) {
    active = it->second.state == ProjectState::Active;
  }
  const int before =
      supervision_.score_of(credit_key_project(project_id), config_.supervision);
  EscalationAction action =
      check_warning_line(supervision_, config_.supervision, project_id, active);
  const int after =
      supervision_.score_of(credit_key_project(project_id), config_.supervision);
  out["action"] = action == EscalationAction::Suspension      ? "suspension"
                  : action == EscalationAction::Investigation ? "investigation"
                                                              : "none";
  out["score"] = after;
  if (after != before) {
    out["credit"] = Json::array({Json::array(
        {credit_key_project(project_id), after - before, after,
         "council investigation below warning line"})});
  }
}

void World::op_regulate(const Json& in, Json& out, Effects& fx) {
  (void)in;
  (void)fx;
  Rational ratio = windowed_valid_ratio();
  regulator_ = dcc::regulate(regulator_, config_.regulator, ratio);
  out["valid_ratio"] = ratio.str();
  out["quota"] = regulator_.quota.str();
  out["incentive"] = regulator_.incentive.str();
}

bool World::election_possible() const {
  GovernanceState staged = governance_;
  staged.apply_pending_membership();
  for (const auto& [id, party] : staged.parties) {
    for (const AccountId& member : party.members) {
      if (ledger_.balance(member, TokenKind::Governance) > 0) return true;
    }
  }
  return false;
}

EscalationAction World::peek_warning_line(const std::string& project_id) const {
  const SupervisionConfig& cfg = config_.supervision;
  std::string key = credit_key_project(project_id);
  auto credit_it = supervision_.credit.find(key);
  int score = credit_it == supervision_.credit.end() ? cfg.initial_credit
                                                     : credit_it->second.score;
  bool investigating =
      credit_it != supervision_.credit.end() && credit_it->second.under_investigation;
  bool active = false;
  auto project_it = crowdfunding_.projects.find(project_id);
  if (project_it != crowdfunding_.projects.end()) {
    active = project_it->second.state == ProjectState::Active;
  }
  if (score > cfg.warning_line) return EscalationAction::None;
  if (!investigating) {
    int after = std::max(score - cfg.delta_investigation, 0);
    return (after <= cfg.hard_floor && active) ? EscalationAction::Suspension
                                               : EscalationAction::Investigation;
  }
  return (score <= cfg.hard_floor && active) ? EscalationAction::Suspension
                                             : EscalationAction::None;
}

void World::archive_stale_records() {
  // Bound the live snapshot: fold stale terminal records into a running
  // digest. The event log retains their full history.
  const Epoch horizon = epoch_ - config_.content_ttl_epochs;
  std::set<std::string> pinned;  // content referenced by a live tip-off
  for (const auto& [id, tipoff] : supervision_.tipoffs) {
    if (!tipoff.terminal() && !tipoff.targets_project) pinned.insert(tipoff.target_id);
  }
  for (auto it = supervision_.contents.begin(); it != supervision_.contents.end();) {
    const ContentRecord& record = it->second;
    bool stale = record.status != ContentStatus::PendingAudit &&
                 record.created_epoch < horizon && !pinned.count(record.id);
    if (stale) {
      archive_digest_ = digest_fields({archive_digest_, "content", record.id,
                                       record.creator,
                                       std::string(to_string(record.status))})
                            .hex();
      archived_contents_++;
      it = supervision_.contents.erase(it);
    } else {
      ++it;
    }
  }
  for (auto it = supervision_.tipoffs.begin(); it != supervision_.tipoffs.end();) {
    const TipOff& tipoff = it->second;
    if (tipoff.terminal() && tipoff.created_epoch < horizon) {
      archive_digest_ = digest_fields({archive_digest_, "tipoff", tipoff.id,
                                       tipoff.reporter,
                                       std::string(to_string(tipoff.state))})
                            .hex();
      archived_contents_++;
      it = supervision_.tipoffs.erase(it);
    } else {
      ++it;
    }
  }
  for (auto it = crowdfunding_.projects.begin(); it != crowdfunding_.projects.end();) {
    const Project& project = it->second;
    if (project.state == ProjectState::Completed) {
      crowdfunding_.completed_count++;
      archive_digest_ =
          digest_fields({archive_digest_, "project", project.id, "Completed"}).hex();
      it = crowdfunding_.projects.erase(it);
    } else if (project.state == ProjectState::Failed) {
      crowdfunding_.failed_count++;
      archive_digest_ =
          digest_fields({archive_digest_, "project", project.id, "Failed"}).hex();
      it = crowdfunding_.projects.erase(it);
    } else {
      ++it;
    }
  }
}

std::string World::canonical_snapshot() const {
  std::string& buf = snapshot_buffer_;
  buf.clear();
  if (buf.capacity() < 4096) buf.reserve(4096);
  CanonicalWriter w(buf);
  w.begin_object();
  w.key("archive");
  w.begin_object();
  w.kv("count", archived_contents_);
  w.kv("digest", archive_digest_);
  w.end_object();
  w.kv("config_digest", config_digest_);
  w.key("crowdfunding");
  crowdfunding_.write_canonical(w);
  w.kv("epoch", epoch_);
  w.key("epoch_creators");
  w.begin_object();
  for (const auto& [account, count] : epoch_accepted_creators_) w.kv(account, count);
  w.end_object();
  w.key("governance");
  governance_.write_canonical(w);
  w.key("ledger");
  ledger_.write_canonical(w);
  w.key("params");
  params_.write_canonical(w);
  w.key("rate");
  w.begin_object();
  w.kv("band_lower", rate_.gold_band_lower);
  w.kv("band_upper", rate_.gold_band_upper);
  w.kv("labor_per_capital", rate_.labor_per_capital);
  w.end_object();
  w.key("regulator");
  regulator_.write_canonical(w);
  w.key("supervision");
  supervision_.write_canonical(w);
  w.key("tallies");
  w.begin_array();
  for (const EpochTally& tally : tallies_) {
    w.begin_array();
    w.value_int(tally.epoch);
    w.value_int(tally.accepted);
    w.value_int(tally.revoked);
    w.end_array();
  }
  w.end_array();
  w.end_object();
  return buf;
}

// ---------------------------------------------------------------------------
// convenience wrappers
// ---------------------------------------------------------------------------

Event World::genesis(const Json& scenario_config) {
  return dispatch("genesis", scenario_config);
}

Event World::open_account(const AccountId& id) {
  Json in;
  in["account"] = id;
  return dispatch("open_account", in);
}

Event World::mint_labor(const AccountId& account, Amount amount,
                               MintReason reason) {
  Json in;
  in["account"] = account;
  in["amount"] = amount;
  in["reason"] = std::string(to_string(reason));
  return dispatch("mint_labor", in);
}

Event World::convert_labor_to_capital(const AccountId& account, Amount labor) {
  Json in;
  in["account"] = account;
  in["labor"] = labor;
  return dispatch("convert_labor_to_capital", in);
}

Event World::start_governance_conversion(const AccountId& account, Amount labor,
                                                int phases) {
  Json in;
  in["account"] = account;
  in["labor"] = labor;
  in["phases"] = phases;
  return dispatch("start_governance_conversion", in);
}

Event World::convert_governance_to_labor(const AccountId& account,
                                                Amount governance) {
  Json in;
  in["account"] = account;
  in["governance"] = governance;
  return dispatch("convert_governance_to_labor", in);
}

Event World::transfer(const AccountId& from, const AccountId& to, TokenKind kind,
                             Amount amount) {
  Json in;
  in["from"] = from;
  in["to"] = to;
  in["kind"] = std::string(to_string(kind));
  in["amount"] = amount;
  return dispatch("transfer", in);
}

Event World::pay_gas(const AccountId& account, Amount capital) {
  Json in;
  in["account"] = account;
  in["capital"] = capital;
  return dispatch("pay_gas", in);
}

Event World::update_exchange_rate(const Rational& supply_signal,
                                         const Rational& demand_signal) {
  Json in;
  in["supply"] = supply_signal.str();
  in["demand"] = demand_signal.str();
  return dispatch("update_rate", in);
}

Event World::distribute_pools() { return dispatch("distribute_pools", Json::object()); }

Event World::advance_epoch() { return dispatch("advance_epoch", Json::object()); }

Event World::create_project(const AccountId& creator, Amount target,
                                   Epoch deadline, const Rational& marketing,
                                   const Rational& theta,
                                   const std::vector<std::pair<Rational, Rational>>& tranches) {
  Json in;
  in["creator"] = creator;
  in["target"] = target;
  in["deadline"] = deadline;
  in["marketing"] = marketing.str();
  in["theta"] = theta.str();
  Json list = Json::array();
  for (const auto& [fraction, conversion] : tranches) {
    list.push_back(Json::array({fraction.str(), conversion.str()}));
  }
  in["tranches"] = std::move(list);
  return dispatch("create_project", in);
}

Event World::publish_contracts(const std::string& project,
                                      const std::string& fund_use_plan_digest,
                                      const std::string& reward_contract_digest) {
  Json in;
  in["project"] = project;
  in["fund_use_plan"] = fund_use_plan_digest;
  in["reward_contract"] = reward_contract_digest;
  return dispatch("publish_contracts", in);
}

Event World::invest(const std::string& project, const AccountId& investor,
                           Amount amount) {
  Json in;
  in["project"] = project;
  in["investor"] = investor;
  in["amount"] = amount;
  return dispatch("invest", in);
}

Event World::pledge(const std::string& project, const AccountId& evaluator,
                           Amount amount) {
  Json in;
  in["project"] = project;
  in["evaluator"] = evaluator;
  in["amount"] = amount;
  return dispatch("pledge", in);
}

Event World::settle_project(const std::string& project) {
  Json in;
  in["project"] = project;
  return dispatch("settle_project", in);
}

Event World::accept_vote(const std::string& project, const AccountId& funder,
                                bool vote) {
  Json in;
  in["project"] = project;
  in["funder"] = funder;
  in["vote"] = vote;
  return dispatch("accept_vote", in);
}

Event World::release_tranche(const std::string& project, int index,
                                    const std::vector<AccountId>& yes_votes) {
  Json in;
  in["project"] = project;
  in["index"] = index;
  in["yes_votes"] = yes_votes;
  return dispatch("release_tranche", in);
}

Event World::suspend_project(const std::string& project, SuspendCause cause) {
  Json in;
  in["project"] = project;
  in["cause"] = std::string(to_string(cause));
  return dispatch("suspend_project", in);
}

Event World::reinstate(const std::string& project,
                              const std::vector<AccountId>& yes_votes) {
  Json in;
  in["project"] = project;
  in["yes_votes"] = yes_votes;
  return dispatch("reinstate_project", in);
}

Event World::form_party(const AccountId& founder,
                               const std::string& charter_digest) {
  Json in;
  in["founder"] = founder;
  in["charter"] = charter_digest;
  return dispatch("form_party", in);
}

Event World::join_party(const AccountId& node, const std::string& party) {
  Json in;
  in["node"] = node;
  in["party"] = party;
  return dispatch("join_party", in);
}

Event World::leave_party(const AccountId& node) {
  Json in;
  in["node"] = node;
  return dispatch("leave_party", in);
}

Event World::elect_assembly() { return dispatch("elect_assembly", Json::object()); }

Event World::nominate_arbitral(const AccountId& chief,
                                      const std::vector<AccountId>& candidates,
                                      const Rational& boost) {
  Json in;
  in["chief"] = chief;
  in["candidates"] = candidates;
  in["boost"] = boost.str();
  return dispatch("nominate_arbitral", in);
}

Event World::adjust_incentive_pool(const AccountId& chief, const Rational& split) {
  Json in;
  in["chief"] = chief;
  in["split"] = split.str();
  return dispatch("adjust_incentive_pool", in);
}

Event World::amend_rules(const AccountId& proposer,
                                const std::vector<AccountId>& yes_votes,
                                const Json& delta) {
  Json in;
  in["proposer"] = proposer;
  in["yes_votes"] = yes_votes;
  in["delta"] = delta;
  return dispatch("amend_rules", in);
}

Event World::impeach_chief(const AccountId& proposer,
                                  const std::vector<AccountId>& yes_votes) {
  Json in;
  in["proposer"] = proposer;
  in["yes_votes"] = yes_votes;
  return dispatch("impeach_chief", in);
}

Event World::phase_down_platform() {
  return dispatch("phase_down_platform", Json::object());
}

Event World::submit_content(const AccountId& creator, const std::string& digest) {
  Json in;
  in["creator"] = creator;
  in["digest"] = digest;
  return dispatch("submit_content", in);
}

Event World::submit_tipoff(const AccountId& reporter, bool targets_project,
                                  const std::string& target, TipOffCategory category,
                                  Amount deposit) {
  Json in;
  in["reporter"] = reporter;
  in["targets_project"] = targets_project;
  in["target"] = target;
  in["category"] = std::string(to_string(category));
  in["deposit"] = deposit;
  return dispatch("submit_tipoff", in);
}

Event World::submit_rebuttal(const std::string& tipoff,
                                    const std::string& evidence) {
  Json in;
  in["tipoff"] = tipoff;
  in["evidence"] = evidence;
  return dispatch("submit_rebuttal", in);
}

Event World::cast_vote(const std::string& interval, const AccountId& voter,
                              bool approve) {
  Json in;
  in["interval"] = interval;
  in["voter"] = voter;
  in["approve"] = approve;
  return dispatch("cast_vote", in);
}

Event World::close_interval(const std::string& interval) {
  Json in;
  in["interval"] = interval;
  return dispatch("close_interval", in);
}

Event World::tipoff_default_judgment(const std::string& tipoff) {
  Json in;
  in["tipoff"] = tipoff;
  return dispatch("tipoff_default", in);
}

Event World::record_satisfaction(const std::string& project,
                                        const AccountId& funder, int rating) {
  Json in;
  in["project"] = project;
  in["funder"] = funder;
  in["rating"] = rating;
  return dispatch("record_satisfaction", in);
}

Event World::credit_escalation(const std::string& project) {
  Json in;
  in["project"] = project;
  return dispatch("credit_escalation", in);
}

Event World::regulate_epoch() { return dispatch("regulate", Json::object()); }

}  // namespace dcc
