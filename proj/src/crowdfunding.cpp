#include "dcc/crowdfunding.hpp"

#include <algorithm>
#include <cstdio>

#include "dcc/allocate.hpp"

namespace dcc {

std::string_view to_string(ProjectState state) {
  switch (state) {
    case ProjectState::Draft: return "Draft";
    case ProjectState::Funding: return "Funding";
    case ProjectState::AwaitingAcceptance: return "AwaitingAcceptance";
    case ProjectState::Active: return "Active";
    case ProjectState::Suspended: return "Suspended";
    case ProjectState::Completed: return "Completed";
    case ProjectState::Failed: return "Failed";
  }
  return "?";
}

std::string_view to_string(SuspendCause cause) {
  switch (cause) {
    case SuspendCause::CouncilAlert: return "CouncilAlert";
    case SuspendCause::CreditWarningLine: return "CreditWarningLine";
  }
  return "?";
}

SuspendCause suspend_cause_from_string(std::string_view name) {
  if (name == "CouncilAlert") return SuspendCause::CouncilAlert;
  if (name == "CreditWarningLine") return SuspendCause::CreditWarningLine;
  fail(Errc::ParseError, "unknown suspend cause '" + std::string(name) + "'");
}

Project& CrowdfundingState::project(const std::string& id) {
  auto it = projects.find(id);
  require(it != projects.end(), Errc::UnknownProject, id);
  return it->second;
}

const Project& CrowdfundingState::project(const std::string& id) const {
  auto it = projects.find(id);
  require(it != projects.end(), Errc::UnknownProject, id);
  return it->second;
}

Project& create_project(CrowdfundingState& cf, const Ledger& ledger,
                        Amount creator_credit, const CrowdfundingConfig& cfg,
                        const AccountId& creator, Amount target, Epoch deadline,
                        Epoch now, const Rational& marketing,
                        const std::vector<std::pair<Rational, Rational>>& tranches,
                        const Rational& acceptance_threshold) {
  require(ledger.has_account(creator), Errc::UnknownAccount, creator);
  require(creator_credit >= cfg.creator_credit_floor, Errc::CreditTooLow,
          creator + " credit " + std::to_string(creator_credit));
  require(target > 0, Errc::ZeroAmount, "target must be positive");
  require(deadline > now, Errc::PastDeadline, "deadline must be in the future");
  require(!marketing.is_negative() && marketing <= Rational(1), Errc::InvalidProportion,
          "marketing proportion " + marketing.str());
  require(acceptance_threshold > Rational(0) && acceptance_threshold <= Rational(1),
          Errc::InvalidProportion, "acceptance threshold " + acceptance_threshold.str());
  require(!tranches.empty(), Errc::BadTrancheSchedule, "no tranches");
  Rational sum(0);
  for (const auto& [fraction, conversion] : tranches) {
    require(fraction > Rational(0), Errc::BadTrancheSchedule, "tranche fraction <= 0");
    require(!conversion.is_negative() && conversion <= Rational(1),
            Errc::InvalidProportion, "labor conversion " + conversion.str());
    sum = sum + fraction;
  }
  require(sum == Rational(1), Errc::BadTrancheSchedule,
          "tranche fractions sum to " + sum.str());

  char buf[16];
  std::snprintf(buf, sizeof(buf), "%05llu", static_cast<unsigned long long>(cf.next_project++));
  Project project;
  project.id = std::string("project-") + buf;
  project.creator = creator;
  project.target = target;
  project.deadline_epoch = deadline;
  project.marketing = marketing;
  project.acceptance_threshold = acceptance_threshold;
  int index = 0;
  for (const auto& [fraction, conversion] : tranches) {
    project.tranches.push_back(Tranche{index++, fraction, conversion, false});
  }
  auto [it, inserted] = cf.projects.emplace(project.id, std::move(project));
  return it->second;
}

void publish_contracts(Project& project, const std::string& fund_use_plan_digest,
                       const std::string& reward_contract_digest) {
  if (project.state == ProjectState::Draft) {
    project.fund_use_plan_digest = fund_use_plan_digest;
    project.reward_contract_digest = reward_contract_digest;
    project.state = ProjectState::Funding;
    return;
  }
  // Rejected contracts may be reformulated and re-published; this resets all
  // acceptance votes.
  if (project.state == ProjectState::AwaitingAcceptance && project.needs_republish) {
    project.fund_use_plan_digest = fund_use_plan_digest;
    project.reward_contract_digest = reward_contract_digest;
    project.acceptance_votes.clear();
    project.needs_republish = false;
    return;
  }
  fail(Errc::WrongState, "publish_contracts in state " +
                             std::string(to_string(project.state)));
}

void invest(Project& project, Ledger& ledger, const AccountId& investor,
            Amount capital_amount, Epoch now, Effects& fx) {
  require(project.state == ProjectState::Funding, Errc::WrongState,
          "invest in state " + std::string(to_string(project.state)));
  require(now < project.deadline_epoch, Errc::PastDeadline,
          "deadline epoch " + std::to_string(project.deadline_epoch));
  require(capital_amount > 0, Errc::ZeroAmount, "investment must be positive");
  // Over-target raises are rejected so the funded amount never exceeds T.
  require(project.raised + capital_amount <= project.target, Errc::TargetExceeded,
          "raised " + std::to_string(project.raised) + " + " +
              std::to_string(capital_amount) + " exceeds target " +
              std::to_string(project.target));
  if (project.funding_escrow.empty()) {
    project.funding_escrow = ledger.escrow_open(
        investor, TokenKind::Capital, capital_amount, project.id + ":funding", fx);
  } else {
    ledger.escrow_add(project.funding_escrow, investor, capital_amount, fx);
  }
  project.raised += capital_amount;
  project.investments[investor] += capital_amount;
}

void pledge(Project& project, Ledger& ledger, const AccountId& evaluator,
            Amount labor_amount, Effects& fx) {
  require(project.state == ProjectState::Funding, Errc::WrongState,
          "pledge in state " + std::string(to_string(project.state)));
  require(labor_amount > 0, Errc::ZeroAmount, "pledge must be positive");
  if (project.pledge_escrow.empty()) {
    project.pledge_escrow = ledger.escrow_open(
        evaluator, TokenKind::Labor, labor_amount, project.id + ":pledges", fx);
  } else {
    ledger.escrow_add(project.pledge_escrow, evaluator, labor_amount, fx);
  }
  project.pledges[evaluator] += labor_amount;
}

SettlementReport settle_at_deadline(Project& project, Ledger& ledger, Epoch now,
                                    Effects& fx) {
  require(project.state == ProjectState::Funding, Errc::WrongState,
          "settle in state " + std::string(to_string(project.state)));
  require(now >= project.deadline_epoch, Errc::BeforeDeadline,
          "deadline epoch " + std::to_string(project.deadline_epoch));

  SettlementReport report;
  report.project = project.id;
  report.raised = project.raised;
  report.target = project.target;
  report.funded_rate = Rational(project.raised, project.target);
  std::map<AccountId, SettlementShare> shares;
  for (const auto& [account, amount] : project.investments) {
    shares[account].account = account;
  }
  for (const auto& [account, amount] : project.pledges) {
    shares[account].account = account;
  }

  if (project.raised >= project.target) {
    report.success = true;
    // Marketing pool to pledgers pro-rata by pledged Labor; remainder is the
    // production fund; every pledged Labor token returns home.
    report.marketing_pool =
        project.pledges.empty() ? 0 : floor_mul(project.raised, project.marketing);
    if (report.marketing_pool > 0) {
      std::map<std::string, Amount> weights(project.pledges.begin(),
                                            project.pledges.end());
      auto rewards = allocate_largest_remainder(report.marketing_pool, weights);
      for (const auto& [account, reward] : rewards) {
        if (reward > 0) {
          ledger.escrow_release(project.funding_escrow, account, reward, fx);
        }
        shares[account].marketing_reward = reward;
      }
    }
    report.production_fund = project.raised - report.marketing_pool;
    project.production_fund = report.production_fund;
    if (report.production_fund > 0) {
      project.production_escrow =
          ledger.escrow_create(TokenKind::Capital, project.id + ":production");
      ledger.escrow_move(project.funding_escrow, project.production_escrow,
                         report.production_fund, fx);
    }
    project.funding_escrow.clear();
    project.state = ProjectState::AwaitingAcceptance;
  } else {
    report.success = false;
    // Escrowed Capital returns in full; pledged Labor refunds at the funded
    // rate, the rest is destroyed.
    for (const auto& [account, amount] : project.investments) {
      ledger.escrow_release(project.funding_escrow, account, amount, fx);
      shares[account].capital_returned = amount;
      report.capital_returned_total += amount;
    }
    for (const auto& [account, pledged] : project.pledges) {
      Amount refund = floor_mul(pledged, report.funded_rate);
      Amount burn = pledged - refund;
      if (refund > 0) ledger.escrow_release(project.pledge_escrow, account, refund, fx);
      if (burn > 0) ledger.escrow_burn(project.pledge_escrow, burn, fx);
      shares[account].labor_refunded = refund;
      shares[account].labor_burned = burn;
      report.labor_refunded_total += refund;
      report.labor_burned_total += burn;
    }
    project.funding_escrow.clear();
    project.state = ProjectState::Failed;
  }

  if (report.success) {
    for (const auto& [account, pledged] : project.pledges) {
      ledger.escrow_release(project.pledge_escrow, account, pledged, fx);
      shares[account].labor_refunded = pledged;
      report.labor_refunded_total += pledged;
    }
  }
  project.pledge_escrow.clear();

  for (auto& [account, share] : shares) report.shares.push_back(share);
  return report;
}

bool accept_contracts(Project& project, const Ledger& ledger, const Assembly& assembly,
                      const CrowdfundingConfig& cfg, const AccountId& funder,
                      bool vote, Epoch now) {
  require(project.state == ProjectState::AwaitingAcceptance, Errc::WrongState,
          "accept_contracts in state " + std::string(to_string(project.state)));
  auto investment = project.investments.find(funder);
  require(investment != project.investments.end(), Errc::NotAFunder, funder);
  require(project.acceptance_votes.find(funder) == project.acceptance_votes.end(),
          Errc::DuplicateVote, funder);
  project.acceptance_votes[funder] = vote;

  Amount accepting_weight = 0;
  for (const auto& [account, v] : project.acceptance_votes) {
    if (v) accepting_weight += project.investments.at(account);
  }
  if (Rational(accepting_weight, project.raised) >= project.acceptance_threshold) {
    project.state = ProjectState::Active;
    project.activated_epoch = now;
    // Council: every investor is a member; weight combines investment share
    // with normalized Governance holdings. Supervisors come from the sitting
    // arbitral bench.
    Amount governance_total = 0;
    for (const auto& [account, amount] : project.investments) {
      governance_total += ledger.balance(account, TokenKind::Governance);
    }
    project.council.members.clear();
    for (const auto& [account, amount] : project.investments) {
      Rational weight = cfg.council_investment_weight * Rational(amount, project.raised);
      if (governance_total > 0) {
        weight = weight + cfg.council_governance_weight *
                              Rational(ledger.balance(account, TokenKind::Governance),
                                       governance_total);
      }
      project.council.members.push_back({account, weight});
    }
    project.council.supervisors = assembly.holders_with(Role::Arbitral);
    return true;
  }
  if (project.acceptance_votes.size() == project.investments.size()) {
    // Every funder voted and the gate was not met: contracts must be
    // reformulated before another round.
    project.needs_republish = true;
  }
  return false;
}

bool council_approves(const Project& project, const std::set<AccountId>& yes_votes) {
  Rational yes(0);
  Rational total(0);
  for (const auto& [account, weight] : project.council.members) {
    total = total + weight;
    if (yes_votes.count(account)) yes = yes + weight;
  }
  if (total.is_zero()) return false;
  return yes / total >= Rational(1, 2);
}

TrancheRelease release_tranche(Project& project, Ledger& ledger,
                               const ExchangeRate& rate, int tranche_index,
                               bool council_approved, Effects& fx) {
  require(project.state != ProjectState::Suspended, Errc::ProjectSuspended, project.id);
  require(project.state == ProjectState::Active, Errc::WrongState,
          "release_tranche in state " + std::string(to_string(project.state)));
  require(tranche_index == project.next_tranche, Errc::OutOfOrderTranche,
          "expected tranche " + std::to_string(project.next_tranche) + ", got " +
              std::to_string(tranche_index));
  require(council_approved, Errc::QuorumNotMet, "council did not approve release");

  Tranche& tranche = project.tranches[static_cast<size_t>(tranche_index)];
  const bool last = tranche_index + 1 == static_cast<int>(project.tranches.size());
  // Equal-fraction floor releases, remainder in the final tranche, so the
  // full production fund is accounted for on completion.
  Amount release = last ? project.production_fund - project.production_released
                        : floor_mul(project.production_fund, tranche.fraction);
  Amount converted = floor_mul(release, tranche.labor_conversion);
  Amount labor = floor_mul(converted, rate.labor_per_capital);

  if (release - converted > 0) {
    ledger.escrow_release(project.production_escrow, project.creator,
                          release - converted, fx);
  }
  if (converted > 0) {
    ledger.escrow_burn(project.production_escrow, converted, fx);
  }
  if (labor > 0) {
    ledger.mint_labor(project.creator, labor, MintReason::TrancheConversion, fx);
  }
  tranche.released = true;
  project.production_released += release;
  project.next_tranche++;

  TrancheRelease result;
  result.index = tranche_index;
  result.total = release;
  result.capital_to_creator = release - converted;
  result.capital_converted = converted;
  result.labor_to_creator = labor;
  if (last) {
    project.state = ProjectState::Completed;
    result.completed = true;
  }
  return result;
}

void suspend_funds(Project& project, SuspendCause cause) {
  require(project.state == ProjectState::Active, Errc::WrongState,
          "suspend in state " + std::string(to_string(project.state)));
  project.state = ProjectState::Suspended;
  (void)cause;
}

void reinstate_project(Project& project, bool council_approved) {
  require(project.state == ProjectState::Suspended, Errc::WrongState,
          "reinstate in state " + std::string(to_string(project.state)));
  require(council_approved, Errc::QuorumNotMet, "council did not approve reinstatement");
  project.state = ProjectState::Active;
}

void Project::write_canonical(CanonicalWriter& w) const {
  w.begin_object();
  w.key("acceptance_votes");
  w.begin_object();
  for (const auto& [account, vote] : acceptance_votes) w.kv_bool(account, vote);
  w.end_object();
  w.kv("activated_epoch", activated_epoch);
  w.key("council");
  w.begin_object();
  w.key("members");
  w.begin_array();
  for (const auto& [account, weight] : council.members) {
    w.begin_array();
    w.value_string(account);
    w.value_rational(weight);
    w.end_array();
  }
  w.end_array();
  w.key("supervisors");
  w.begin_array();
  for (const AccountId& s : council.supervisors) w.value_string(s);
  w.end_array();
  w.end_object();
  w.kv("creator", creator);
  w.kv("deadline", deadline_epoch);
  w.kv("fund_use_plan", fund_use_plan_digest);
  w.kv("funding_escrow", funding_escrow);
  w.key("investments");
  w.begin_object();
  for (const auto& [account, amount] : investments) w.kv(account, amount);
  w.end_object();
  w.kv("marketing", marketing);
  w.kv_bool("needs_republish", needs_republish);
  w.kv("next_tranche", static_cast<std::int64_t>(next_tranche));
  w.kv("pledge_escrow", pledge_escrow);
  w.key("pledges");
  w.begin_object();
  for (const auto& [account, amount] : pledges) w.kv(account, amount);
  w.end_object();
  w.kv("production_escrow", production_escrow);
  w.kv("production_fund", production_fund);
  w.kv("production_released", production_released);
  w.kv("raised", raised);
  w.kv("reward_contract", reward_contract_digest);
  w.key("satisfaction");
  w.begin_object();
  for (const auto& [account, period] : satisfaction_next_period) {
    w.kv(account, static_cast<std::int64_t>(period));
  }
  w.end_object();
  w.kv("state", to_string(state));
  w.kv("target", target);
  w.kv("theta", acceptance_threshold);
  w.key("tranches");
  w.begin_array();
  for (const Tranche& t : tranches) {
    w.begin_object();
    w.kv("fraction", t.fraction);
    w.kv("index", static_cast<std::int64_t>(t.index));
    w.kv("lambda", t.labor_conversion);
    w.kv_bool("released", t.released);
    w.end_object();
  }
  w.end_array();
  w.end_object();
}

void CrowdfundingState::write_canonical(CanonicalWriter& w) const {
  w.begin_object();
  w.kv("completed", completed_count);
  w.kv("failed", failed_count);
  w.key("next_project");
  w.value_uint(next_project);
  w.key("projects");
  w.begin_object();
  for (const auto& [id, project] : projects) {
    w.key(id);
    project.write_canonical(w);
  }
  w.end_object();
  w.end_object();
}

}  // namespace dcc
