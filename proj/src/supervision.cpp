#include "dcc/supervision.hpp"

#include <algorithm>
#include <cstdio>

namespace dcc {

namespace {

std::string pad_id(const char* prefix, std::uint64_t n) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%08llu", static_cast<unsigned long long>(n));
  return std::string(prefix) + buf;
}

}  // namespace

std::string_view to_string(ContentStatus status) {
  switch (status) {
    case ContentStatus::PendingAudit: return "PendingAudit";
    case ContentStatus::Accepted: return "Accepted";
    case ContentStatus::Revoked: return "Revoked";
  }
  return "?";
}

std::string_view to_string(TipOffCategory category) {
  switch (category) {
    case TipOffCategory::Plagiarism: return "Plagiarism";
    case TipOffCategory::Fake: return "Fake";
    case TipOffCategory::Fraud: return "Fraud";
    case TipOffCategory::LowCreativity: return "LowCreativity";
  }
  return "?";
}

TipOffCategory tipoff_category_from_string(std::string_view name) {
  if (name == "Plagiarism") return TipOffCategory::Plagiarism;
  if (name == "Fake") return TipOffCategory::Fake;
  if (name == "Fraud") return TipOffCategory::Fraud;
  if (name == "LowCreativity") return TipOffCategory::LowCreativity;
  fail(Errc::ParseError, "unknown tip-off category '" + std::string(name) + "'");
}

std::string_view to_string(TipOffState state) {
  switch (state) {
    case TipOffState::PendingAudit: return "PendingAudit";
    case TipOffState::Published: return "Published";
    case TipOffState::AwaitingRebuttal: return "AwaitingRebuttal";
    case TipOffState::RefutedSuccessfully: return "RefutedSuccessfully";
    case TipOffState::Upheld: return "Upheld";
    case TipOffState::Dismissed: return "Dismissed";
  }
  return "?";
}

std::string_view to_string(IntervalKind kind) {
  switch (kind) {
    case IntervalKind::ContentAudit: return "ContentAudit";
    case IntervalKind::TipOffAudit: return "TipOffAudit";
    case IntervalKind::Arbitration: return "Arbitration";
  }
  return "?";
}

std::string credit_key_account(const AccountId& account) { return "a/" + account; }
std::string credit_key_project(const std::string& project_id) {
  return "p/" + project_id;
}

ContentRecord& SupervisionState::content(const std::string& id) {
  auto it = contents.find(id);
  require(it != contents.end(), Errc::UnknownContent, id);
  return it->second;
}

TipOff& SupervisionState::tipoff(const std::string& id) {
  auto it = tipoffs.find(id);
  require(it != tipoffs.end(), Errc::UnknownTipOff, id);
  return it->second;
}

EvaluationInterval& SupervisionState::interval(const std::string& id) {
  auto it = intervals.find(id);
  require(it != intervals.end(), Errc::UnknownInterval, id);
  return it->second;
}

int SupervisionState::score_of(const std::string& credit_key,
                               const SupervisionConfig& cfg) const {
  auto it = credit.find(credit_key);
  return it == credit.end() ? cfg.initial_credit : it->second.score;
}

int SupervisionState::credit_apply(const std::string& credit_key, int delta,
                                   const SupervisionConfig& cfg) {
  auto [it, inserted] = credit.try_emplace(credit_key, CreditRecord{cfg.initial_credit, false});
  it->second.score = std::clamp(it->second.score + delta, 0, 100);
  if (it->second.score > cfg.warning_line) it->second.under_investigation = false;
  return it->second.score;
}

ContentRecord& submit_content(SupervisionState& sup, const Ledger& ledger,
                              const SupervisionConfig& cfg, const AccountId& creator,
                              const std::string& digest, Epoch now,
                              std::string* interval_id_out) {
  require(ledger.has_account(creator), Errc::UnknownAccount, creator);
  ContentRecord record;
  record.id = pad_id("content-", sup.next_content++);
  record.creator = creator;
  record.digest = digest;
  record.created_epoch = now;
  auto [it, inserted] = sup.contents.emplace(record.id, std::move(record));

  EvaluationInterval interval;
  interval.id = pad_id("interval-", sup.next_interval++);
  interval.kind = IntervalKind::ContentAudit;
  interval.case_id = it->first;
  interval.close_epoch = now + cfg.audit_interval - 1;
  if (interval_id_out) *interval_id_out = interval.id;
  sup.intervals.emplace(interval.id, std::move(interval));
  return it->second;
}

TipOff& submit_tipoff(SupervisionState& sup, Ledger& ledger,
                      const SupervisionConfig& cfg, const AccountId& reporter,
                      bool targets_project, const std::string& target_id,
                      TipOffCategory category, Amount deposit, Epoch now, Effects& fx,
                      std::string* interval_id_out) {
  int reporter_score = sup.score_of(credit_key_account(reporter), cfg);
  require(reporter_score >= cfg.tipoff_credit_floor, Errc::CreditTooLow,
          reporter + " credit " + std::to_string(reporter_score) + " < floor " +
              std::to_string(cfg.tipoff_credit_floor));
  require(deposit >= cfg.deposit_min, Errc::ZeroAmount,
          "deposit below minimum " + std::to_string(cfg.deposit_min));
  if (!targets_project) {
    const ContentRecord& target = sup.content(target_id);
    require(target.status == ContentStatus::Accepted, Errc::WrongState,
            "tip-off target content is " + std::string(to_string(target.status)));
  }

  TipOff tipoff;
  tipoff.id = pad_id("tipoff-", sup.next_tipoff++);
  tipoff.reporter = reporter;
  tipoff.targets_project = targets_project;
  tipoff.target_id = target_id;
  tipoff.category = category;
  tipoff.deposit = deposit;
  tipoff.created_epoch = now;
  tipoff.deposit_escrow = ledger.escrow_open(reporter, TokenKind::Labor, deposit,
                                             tipoff.id + ":deposit", fx);
  auto [it, inserted] = sup.tipoffs.emplace(tipoff.id, std::move(tipoff));

  EvaluationInterval interval;
  interval.id = pad_id("interval-", sup.next_interval++);
  interval.kind = IntervalKind::TipOffAudit;
  interval.case_id = it->first;
  interval.close_epoch = now + cfg.audit_interval - 1;
  if (interval_id_out) *interval_id_out = interval.id;
  sup.intervals.emplace(interval.id, std::move(interval));
  return it->second;
}

void submit_rebuttal(SupervisionState& sup, const SupervisionConfig& cfg,
                     const std::string& tipoff_id, const std::string& evidence_digest,
                     Epoch now, std::string* interval_id_out) {
  TipOff& tipoff = sup.tipoff(tipoff_id);
  require(tipoff.state == TipOffState::AwaitingRebuttal && !tipoff.rebuttal_submitted,
          Errc::WrongState, tipoff_id + " is " + std::string(to_string(tipoff.state)));
  require(now <= tipoff.rebuttal_deadline, Errc::PastDeadline,
          "rebuttal deadline epoch " + std::to_string(tipoff.rebuttal_deadline));
  tipoff.rebuttal_submitted = true;
  tipoff.rebuttal_digest = evidence_digest;

  EvaluationInterval interval;
  interval.id = pad_id("interval-", sup.next_interval++);
  interval.kind = IntervalKind::Arbitration;
  interval.case_id = tipoff_id;
  interval.close_epoch = now + cfg.arbitration_interval - 1;
  if (interval_id_out) *interval_id_out = interval.id;
  sup.intervals.emplace(interval.id, std::move(interval));
}

void cast_vote(SupervisionState& sup, const Assembly& assembly,
               const std::string& interval_id, const AccountId& voter, bool approve,
               Epoch now) {
  EvaluationInterval& interval = sup.interval(interval_id);
  require(now <= interval.close_epoch, Errc::PastDeadline,
          interval_id + " closed at epoch " + std::to_string(interval.close_epoch));
  require(assembly.holds_role(voter, Role::Arbitral), Errc::NotArbitral, voter);
  require(interval.votes.find(voter) == interval.votes.end(), Errc::DuplicateVote,
          voter + " already voted in " + interval_id);
  interval.votes[voter] = approve;
}

bool interval_passes(const EvaluationInterval& interval, const Assembly& assembly,
                     const Rational& threshold) {
  std::set<AccountId> bench = assembly.holders_with(Role::Arbitral);
  if (bench.empty()) return false;
  Amount approvals = 0;
  for (const auto& [voter, approve] : interval.votes) {
    // Only votes from the sitting bench count toward the tally.
    if (approve && bench.count(voter)) approvals++;
  }
  return Rational(approvals, static_cast<Amount>(bench.size())) >= threshold;
}

int record_satisfaction(SupervisionState& sup, const SupervisionConfig& cfg,
                        Project& project, const AccountId& funder, int rating) {
  require(rating >= -1 && rating <= 1, Errc::OutOfBounds, "rating must be -1, 0 or +1");
  require(project.investments.count(funder) > 0, Errc::NotAFunder, funder);
  int period = project.next_tranche;
  auto [it, inserted] = project.satisfaction_next_period.try_emplace(funder, 0);
  require(it->second <= period, Errc::DuplicateRating,
          funder + " already rated period " + std::to_string(period));
  it->second = period + 1;  // a 0 rating still consumes the period's slot
  return sup.credit_apply(credit_key_project(project.id),
                          rating * cfg.satisfaction_weight, cfg);
}

EscalationAction check_warning_line(SupervisionState& sup, const SupervisionConfig& cfg,
                                    const std::string& project_id, bool project_active) {
  std::string key = credit_key_project(project_id);
  auto [it, inserted] = sup.credit.try_emplace(key, CreditRecord{cfg.initial_credit, false});
  CreditRecord& record = it->second;
  EscalationAction action = EscalationAction::None;
  if (record.score > cfg.warning_line) {
    record.under_investigation = false;
    return action;
  }
  if (!record.under_investigation) {
    // Crossing the warning line: the council intervenes and deducts further.
    record.under_investigation = true;
    record.score = std::clamp(record.score - cfg.delta_investigation, 0, 100);
    action = EscalationAction::Investigation;
  }
  if (record.score <= cfg.hard_floor && project_active) {
    action = EscalationAction::Suspension;
  }
  return action;
}

void SupervisionState::write_canonical(CanonicalWriter& w) const {
  w.begin_object();
  w.kv("accepted_total", accepted_total);
  w.key("contents");
  w.begin_object();
  for (const auto& [id, record] : contents) {
    w.key(id);
    w.begin_object();
    w.kv("created", record.created_epoch);
    w.kv("creator", record.creator);
    w.kv("digest", record.digest);
    w.kv("reward_paid", record.reward_paid);
    w.kv("status", to_string(record.status));
    w.end_object();
  }
  w.end_object();
  w.key("credit");
  w.begin_object();
  for (const auto& [key, record] : credit) {
    w.key(key);
    w.begin_object();
    w.kv_bool("investigating", record.under_investigation);
    w.kv("score", static_cast<std::int64_t>(record.score));
    w.end_object();
  }
  w.end_object();
  w.kv("dropped_total", dropped_total);
  w.key("intervals");
  w.begin_object();
  for (const auto& [id, interval] : intervals) {
    w.key(id);
    w.begin_object();
    w.kv("case", interval.case_id);
    w.kv("close_epoch", interval.close_epoch);
    w.kv("kind", to_string(interval.kind));
    w.key("votes");
    w.begin_object();
    for (const auto& [voter, approve] : interval.votes) w.kv_bool(voter, approve);
    w.end_object();
    w.end_object();
  }
  w.end_object();
  w.key("next_content");
  w.value_uint(next_content);
  w.key("next_interval");
  w.value_uint(next_interval);
  w.key("next_tipoff");
  w.value_uint(next_tipoff);
  w.kv("revoked_total", revoked_total);
  w.key("tipoffs");
  w.begin_object();
  for (const auto& [id, tipoff] : tipoffs) {
    w.key(id);
    w.begin_object();
    w.kv("category", to_string(tipoff.category));
    w.kv("created", tipoff.created_epoch);
    w.kv("deposit", tipoff.deposit);
    w.kv("deposit_escrow", tipoff.deposit_escrow);
    w.kv("rebuttal_deadline", tipoff.rebuttal_deadline);
    w.kv("rebuttal_digest", tipoff.rebuttal_digest);
    w.kv_bool("rebuttal_submitted", tipoff.rebuttal_submitted);
    w.kv("reporter", tipoff.reporter);
    w.kv("state", to_string(tipoff.state));
    w.kv("target", tipoff.target_id);
    w.kv_bool("targets_project", tipoff.targets_project);
    w.end_object();
  }
  w.end_object();
  w.end_object();
}

}  // namespace dcc
