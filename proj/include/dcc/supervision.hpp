#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dcc/canonical.hpp"
#include "dcc/crowdfunding.hpp"
#include "dcc/governance.hpp"
#include "dcc/ledger.hpp"
#include "dcc/types.hpp"

namespace dcc {

enum class ContentStatus : int { PendingAudit = 0, Accepted, Revoked };
std::string_view to_string(ContentStatus status);

enum class TipOffCategory : int { Plagiarism = 0, Fake, Fraud, LowCreativity };
std::string_view to_string(TipOffCategory category);
TipOffCategory tipoff_category_from_string(std::string_view name);

enum class TipOffState : int {
  PendingAudit = 0,
  Published,
  AwaitingRebuttal,
  RefutedSuccessfully,
  Upheld,
  Dismissed,
};
std::string_view to_string(TipOffState state);

enum class IntervalKind : int { ContentAudit = 0, TipOffAudit, Arbitration };
std::string_view to_string(IntervalKind kind);

struct ContentRecord {
  std::string id;
  AccountId creator;
  std::string digest;
  Amount reward_paid{0};
  ContentStatus status{ContentStatus::PendingAudit};
  Epoch created_epoch{0};
};

// TipOffState::Published is transient: a passed preliminary audit publishes
// the tip-off and immediately opens the rebuttal window (AwaitingRebuttal).
struct TipOff {
  std::string id;
  AccountId reporter;
  bool targets_project{false};
  std::string target_id;  // content id or project id
  TipOffCategory category{TipOffCategory::Plagiarism};
  TipOffState state{TipOffState::PendingAudit};
  Amount deposit{0};
  std::string deposit_escrow;
  Epoch rebuttal_deadline{-1};
  bool rebuttal_submitted{false};
  std::string rebuttal_digest;
  Epoch created_epoch{0};

  bool terminal() const {
    return state == TipOffState::RefutedSuccessfully || state == TipOffState::Upheld ||
           state == TipOffState::Dismissed;
  }
};

// Cumulative arbitral voting window for one case.
struct EvaluationInterval {
  std::string id;
  IntervalKind kind{IntervalKind::ContentAudit};
  std::string case_id;
  Epoch close_epoch{0};
  std::map<AccountId, bool> votes;
};

struct CreditRecord {
  int score{60};
  bool under_investigation{false};
};

// Vote thresholds (alpha, arbitration) live in ParameterSet: they are
// senatorially amendable at runtime.
struct SupervisionConfig {
  int initial_credit{60};
  int tipoff_credit_floor{60};
  int delta_guilty{15};
  int delta_false{10};
  int delta_investigation{5};
  int warning_line{30};   // W
  int hard_floor{15};     // F
  Amount content_reward{50};   // R_c, scaled by the regulator quota
  Amount tipoff_reward{20};    // R_w, scaled by the supervision incentive
  Amount deposit_min{10};
  int satisfaction_weight{5};  // w_sat
  int audit_interval{1};       // epochs
  int rebuttal_window{2};
  int arbitration_interval{1};
};

// Credit subjects are namespaced to keep accounts and projects apart.
std::string credit_key_account(const AccountId& account);
std::string credit_key_project(const std::string& project_id);

struct SupervisionState {
  std::map<std::string, ContentRecord> contents;
  std::map<std::string, TipOff> tipoffs;
  std::map<std::string, EvaluationInterval> intervals;
  std::map<std::string, CreditRecord> credit;
  std::uint64_t next_content{0};
  std::uint64_t next_tipoff{0};
  std::uint64_t next_interval{0};
  // cumulative tallies (survive pruning of terminal records)
  std::int64_t accepted_total{0};
  std::int64_t revoked_total{0};
  std::int64_t dropped_total{0};

  ContentRecord& content(const std::string& id);
  TipOff& tipoff(const std::string& id);
  EvaluationInterval& interval(const std::string& id);
  int score_of(const std::string& credit_key, const SupervisionConfig& cfg) const;
  // Returns the new score after a clamped delta.
  int credit_apply(const std::string& credit_key, int delta,
                   const SupervisionConfig& cfg);
  void write_canonical(CanonicalWriter& w) const;
};

// -- operations -------------------------------------------------------------

// Opens a PendingAudit content record plus its evaluation interval.
ContentRecord& submit_content(SupervisionState& sup, const Ledger& ledger,
                              const SupervisionConfig& cfg, const AccountId& creator,
                              const std::string& digest, Epoch now,
                              std::string* interval_id_out = nullptr);

TipOff& submit_tipoff(SupervisionState& sup, Ledger& ledger,
                      const SupervisionConfig& cfg, const AccountId& reporter,
                      bool targets_project, const std::string& target_id,
                      TipOffCategory category, Amount deposit, Epoch now, Effects& fx,
                      std::string* interval_id_out = nullptr);

// Records the evidence and opens the arbitration interval.
void submit_rebuttal(SupervisionState& sup, const SupervisionConfig& cfg,
                     const std::string& tipoff_id, const std::string& evidence_digest,
                     Epoch now, std::string* interval_id_out = nullptr);

// One arbitral vote in an open interval; only sitting arbitral nodes, one
// vote per node per interval.
void cast_vote(SupervisionState& sup, const Assembly& assembly,
               const std::string& interval_id, const AccountId& voter, bool approve,
               Epoch now);

// Threshold tally over the distinct sitting arbitral bench.
bool interval_passes(const EvaluationInterval& interval, const Assembly& assembly,
                     const Rational& threshold);

// Satisfaction feedback: one rating per funder per tranche period. Returns
// the project's new credit score.
int record_satisfaction(SupervisionState& sup, const SupervisionConfig& cfg,
                        Project& project, const AccountId& funder, int rating);

enum class EscalationAction : int { None = 0, Investigation, Suspension };

// Warning-line sweep for one project id; applies the investigation deduction
// on crossing and reports whether funds must be suspended.
EscalationAction check_warning_line(SupervisionState& sup, const SupervisionConfig& cfg,
                                    const std::string& project_id, bool project_active);

}  // namespace dcc
