#include "dcc/scenario.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace dcc {

const std::vector<std::string>& known_policies() {
  static const std::vector<std::string> names = {
      "honest-creator",    "plagiarist",     "diligent-investor",
      "fickle-investor",   "active-governor", "passive-holder",
      "honest-reporter",   "false-reporter",
  };
  return names;
}

namespace {

void load_policies(const Json& j, PolicySet& p) {
  check_known_keys(
      j, {"creator_submit_prob", "creator_pledge_prob", "creator_pledge_fraction",
          "creator_launch_prob", "plagiarist_base_prob", "plagiarist_rebut_prob",
          "investor_fraction", "fickle_invest_prob", "fickle_accept_prob",
          "satisfaction_threshold", "governor_convert_fraction", "governor_phases",
          "governor_convert_prob", "chief_adjust_prob", "chief_nominate_prob",
          "nomination_boost", "max_parties", "holder_transfer_prob",
          "reporter_detect_prob", "false_report_prob", "report_deposit",
          "audit_approve_genuine", "audit_approve_plagiarized", "publish_true_report",
          "publish_false_report", "rebuttal_accept_genuine",
          "rebuttal_accept_plagiarized"},
      "policies");
  p.creator_submit_prob = rational_field(j, "creator_submit_prob", p.creator_submit_prob);
  p.creator_pledge_prob = rational_field(j, "creator_pledge_prob", p.creator_pledge_prob);
  p.creator_pledge_fraction =
      rational_field(j, "creator_pledge_fraction", p.creator_pledge_fraction);
  p.creator_launch_prob = rational_field(j, "creator_launch_prob", p.creator_launch_prob);
  p.plagiarist_base_prob =
      rational_field(j, "plagiarist_base_prob", p.plagiarist_base_prob);
  p.plagiarist_rebut_prob =
      rational_field(j, "plagiarist_rebut_prob", p.plagiarist_rebut_prob);
  p.investor_fraction = rational_field(j, "investor_fraction", p.investor_fraction);
  p.fickle_invest_prob = rational_field(j, "fickle_invest_prob", p.fickle_invest_prob);
  p.fickle_accept_prob = rational_field(j, "fickle_accept_prob", p.fickle_accept_prob);
  p.satisfaction_threshold = static_cast<int>(
      int_field(j, "satisfaction_threshold", p.satisfaction_threshold));
  p.governor_convert_fraction =
      rational_field(j, "governor_convert_fraction", p.governor_convert_fraction);
  p.governor_phases = static_cast<int>(int_field(j, "governor_phases", p.governor_phases));
  p.governor_convert_prob =
      rational_field(j, "governor_convert_prob", p.governor_convert_prob);
  p.chief_adjust_prob = rational_field(j, "chief_adjust_prob", p.chief_adjust_prob);
  p.chief_nominate_prob = rational_field(j, "chief_nominate_prob", p.chief_nominate_prob);
  p.nomination_boost = rational_field(j, "nomination_boost", p.nomination_boost);
  p.max_parties = static_cast<int>(int_field(j, "max_parties", p.max_parties));
  p.holder_transfer_prob =
      rational_field(j, "holder_transfer_prob", p.holder_transfer_prob);
  p.reporter_detect_prob =
      rational_field(j, "reporter_detect_prob", p.reporter_detect_prob);
  p.false_report_prob = rational_field(j, "false_report_prob", p.false_report_prob);
  p.report_deposit = int_field(j, "report_deposit", p.report_deposit);
  p.audit_approve_genuine =
      rational_field(j, "audit_approve_genuine", p.audit_approve_genuine);
  p.audit_approve_plagiarized =
      rational_field(j, "audit_approve_plagiarized", p.audit_approve_plagiarized);
  p.publish_true_report = rational_field(j, "publish_true_report", p.publish_true_report);
  p.publish_false_report =
      rational_field(j, "publish_false_report", p.publish_false_report);
  p.rebuttal_accept_genuine =
      rational_field(j, "rebuttal_accept_genuine", p.rebuttal_accept_genuine);
  p.rebuttal_accept_plagiarized =
      rational_field(j, "rebuttal_accept_plagiarized", p.rebuttal_accept_plagiarized);
  require(p.governor_phases >= 1, Errc::ConfigInvalid, "governor_phases must be >= 1");
  require(p.max_parties >= 1, Errc::ConfigInvalid, "max_parties must be >= 1");
  require(p.nomination_boost > Rational(1), Errc::ConfigInvalid,
          "nomination_boost must exceed 1");
}

ProjectTemplate load_project_template(const Json& j, size_t index) {
  check_known_keys(j, {"target", "duration", "marketing", "tranches",
                       "labor_conversion", "acceptance_threshold"},
                   "projects[" + std::to_string(index) + "]");
  ProjectTemplate t;
  t.target = int_field(j, "target", t.target);
  t.duration = static_cast<int>(int_field(j, "duration", t.duration));
  t.marketing = rational_field(j, "marketing", t.marketing);
  t.labor_conversion = rational_field(j, "labor_conversion", t.labor_conversion);
  t.acceptance_threshold =
      rational_field(j, "acceptance_threshold", t.acceptance_threshold);
  if (j.contains("tranches")) {
    t.tranche_fractions.clear();
    for (const Json& f : j.at("tranches")) {
      t.tranche_fractions.push_back(f.is_number_integer()
                                        ? Rational(f.get<std::int64_t>())
                                        : Rational::parse(f.get<std::string>()));
    }
  }
  require(t.target > 0 && t.duration >= 1, Errc::ConfigInvalid,
          "project template target/duration invalid");
  return t;
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json(const Json& j) {
  check_known_keys(j, {"seed", "epochs", "params", "rate", "supervision",
                       "crowdfunding", "regulator", "platform_account",
                       "content_ttl_epochs", "agents", "endowments", "policies",
                       "projects"},
                   "scenario");
  ScenarioConfig cfg;
  require(j.contains("seed") && j.at("seed").is_number_integer() &&
              (j.at("seed").is_number_unsigned() || j.at("seed").get<std::int64_t>() >= 0),
          Errc::ConfigInvalid, "seed must be a non-negative integer");
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.epochs = static_cast<int>(int_field(j, "epochs", 0));
  require(cfg.epochs >= 0, Errc::ConfigInvalid, "epochs must be >= 0");
  cfg.world = WorldConfig::from_json(j);
  cfg.raw = j;

  if (j.contains("agents")) {
    check_known_keys(j.at("agents"), known_policies(), "agents");
    for (const auto& [policy, count] : j.at("agents").items()) {
      require(count.is_number_integer() && count.get<int>() >= 0, Errc::ConfigInvalid,
              "agent count for " + policy + " must be a non-negative integer");
      cfg.agents[policy] = count.get<int>();
    }
  }
  if (j.contains("endowments")) {
    check_known_keys(j.at("endowments"), {"labor", "capital"}, "endowments");
    cfg.endow_labor = int_field(j.at("endowments"), "labor", cfg.endow_labor);
    cfg.endow_capital = int_field(j.at("endowments"), "capital", cfg.endow_capital);
    require(cfg.endow_labor >= 0 && cfg.endow_capital >= 0, Errc::ConfigInvalid,
            "endowments must be non-negative");
  }
  if (j.contains("rate") && j.at("rate").contains("peg_series")) {
    for (const Json& v : j.at("rate").at("peg_series")) {
      cfg.peg_series.push_back(v.is_number_integer()
                                   ? Rational(v.get<std::int64_t>())
                                   : Rational::parse(v.get<std::string>()));
    }
  }
  if (j.contains("policies")) load_policies(j.at("policies"), cfg.policies);
  if (j.contains("projects")) {
    for (size_t i = 0; i < j.at("projects").size(); ++i) {
      cfg.projects.push_back(load_project_template(j.at("projects")[i], i));
    }
  } else {
    cfg.projects.push_back(ProjectTemplate{});
  }
  return cfg;
}

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::IoFailure, "cannot open scenario file " + path);
  Json j = Json::parse(in, nullptr, false);
  require(!j.is_discarded(), Errc::ConfigInvalid, "scenario file is not valid JSON");
  return from_json(j);
}

}  // namespace dcc
