#pragma once

#include <map>
#include <string>
#include <vector>

#include "dcc/config.hpp"

namespace dcc {

// Deterministic behavioural parameters; every probability is a rational so
// agent draws reduce to integer threshold comparisons.
struct PolicySet {
  // honest-creator
  Rational creator_submit_prob{4, 5};
  Rational creator_pledge_prob{3, 10};
  Rational creator_pledge_fraction{1, 5};
  Rational creator_launch_prob{1, 2};
  // plagiarist: activity scales with quota and against supervision incentive
  Rational plagiarist_base_prob{4, 5};
  Rational plagiarist_rebut_prob{1, 4};
  // investors
  Rational investor_fraction{1, 2};
  Rational fickle_invest_prob{1, 2};
  Rational fickle_accept_prob{1, 2};
  int satisfaction_threshold{50};
  // active-governor
  Rational governor_convert_fraction{1, 2};
  int governor_phases{2};
  Rational governor_convert_prob{1, 2};
  Rational chief_adjust_prob{1, 10};
  Rational chief_nominate_prob{1, 10};
  Rational nomination_boost{4, 1};
  int max_parties{2};
  // passive-holder
  Rational holder_transfer_prob{3, 10};
  // reporters
  Rational reporter_detect_prob{7, 10};
  Rational false_report_prob{2, 5};
  Amount report_deposit{10};
  // arbitral voting model
  Rational audit_approve_genuine{19, 20};
  Rational audit_approve_plagiarized{3, 10};
  Rational publish_true_report{9, 10};
  Rational publish_false_report{2, 5};
  Rational rebuttal_accept_genuine{9, 10};
  Rational rebuttal_accept_plagiarized{1, 10};
};

struct ProjectTemplate {
  Amount target{100};
  int duration{4};
  Rational marketing{1, 5};
  std::vector<Rational> tranche_fractions{{1, 2}, {1, 2}};
  Rational labor_conversion{1, 10};
  Rational acceptance_threshold{1, 2};
};

// Full closed-world scenario: unknown keys anywhere are rejected.
struct ScenarioConfig {
  std::uint64_t seed{0};
  int epochs{0};
  WorldConfig world;
  Json raw;  // genesis payload; the log stays self-describing
  std::map<std::string, int> agents;  // policy name -> count
  Amount endow_labor{500};
  Amount endow_capital{200};
  PolicySet policies;
  std::vector<ProjectTemplate> projects;
  // external gold-peg index observations, cycled per epoch (empty: on-peg)
  std::vector<Rational> peg_series;

  static ScenarioConfig from_json(const Json& j);
  static ScenarioConfig from_file(const std::string& path);
};

const std::vector<std::string>& known_policies();

}  // namespace dcc
