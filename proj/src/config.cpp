#include "dcc/config.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace dcc {

void check_known_keys(const Json& object, const std::vector<std::string>& known,
                      const std::string& where) {
  if (!object.is_object()) {
    fail(Errc::ConfigInvalid, where + " must be an object");
  }
  for (const auto& [key, value] : object.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      fail(Errc::ConfigInvalid, where + ": unknown key '" + key + "'");
    }
  }
}

Rational rational_field(const Json& object, const std::string& key,
                        const Rational& fallback) {
  if (!object.contains(key)) return fallback;
  const Json& v = object.at(key);
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  fail(Errc::ConfigInvalid, "field '" + key + "' must be an integer or 'n/d' string");
}

std::int64_t int_field(const Json& object, const std::string& key,
                       std::int64_t fallback) {
  if (!object.contains(key)) return fallback;
  const Json& v = object.at(key);
  if (!v.is_number_integer()) {
    fail(Errc::ConfigInvalid, "field '" + key + "' must be an integer");
  }
  return v.get<std::int64_t>();
}

namespace {

void load_params(const Json& j, ParameterSet& p) {
  check_known_keys(j, {"labor_to_governance", "incentive_pool_split",
                       "platform_supervision_share", "platform_decay",
                       "platform_cutoff", "amendment_supermajority",
                       "impeachment_supermajority", "split_min", "split_max",
                       "party_min_governance", "seats_chief", "seats_senatorial",
                       "seats_arbitral", "audit_threshold", "arbitration_threshold",
                       "weighted_lottery"},
                   "params");
  p.labor_to_governance = rational_field(j, "labor_to_governance", p.labor_to_governance);
  p.incentive_pool_split = rational_field(j, "incentive_pool_split", p.incentive_pool_split);
  p.platform_supervision_share =
      rational_field(j, "platform_supervision_share", p.platform_supervision_share);
  p.platform_decay = rational_field(j, "platform_decay", p.platform_decay);
  p.platform_cutoff = rational_field(j, "platform_cutoff", p.platform_cutoff);
  p.amendment_supermajority =
      rational_field(j, "amendment_supermajority", p.amendment_supermajority);
  p.impeachment_supermajority =
      rational_field(j, "impeachment_supermajority", p.impeachment_supermajority);
  p.split_min = rational_field(j, "split_min", p.split_min);
  p.split_max = rational_field(j, "split_max", p.split_max);
  p.party_min_governance =
      int_field(j, "party_min_governance", p.party_min_governance);
  p.roles.chief = static_cast<int>(int_field(j, "seats_chief", p.roles.chief));
  p.roles.senatorial =
      static_cast<int>(int_field(j, "seats_senatorial", p.roles.senatorial));
  p.roles.arbitral = static_cast<int>(int_field(j, "seats_arbitral", p.roles.arbitral));
  p.audit_threshold = rational_field(j, "audit_threshold", p.audit_threshold);
  p.arbitration_threshold =
      rational_field(j, "arbitration_threshold", p.arbitration_threshold);
  if (j.contains("weighted_lottery")) {
    require(j.at("weighted_lottery").is_boolean(), Errc::ConfigInvalid,
            "weighted_lottery must be a boolean");
    p.weighted_lottery = j.at("weighted_lottery").get<bool>();
  }

  require(p.labor_to_governance > Rational(0), Errc::ConfigInvalid,
          "labor_to_governance must be positive");
  require(p.platform_decay > Rational(0) && p.platform_decay < Rational(1),
          Errc::ConfigInvalid, "platform_decay must decay strictly (0 < d < 1)");
  require(!p.platform_supervision_share.is_negative() &&
              p.platform_supervision_share <= Rational(1),
          Errc::ConfigInvalid, "platform_supervision_share must be in [0,1]");
  require(p.split_min <= p.split_max, Errc::ConfigInvalid, "split bounds inverted");
  require(p.roles.chief >= 0 && p.roles.senatorial >= 0 && p.roles.arbitral >= 0 &&
              p.roles.total() >= 1,
          Errc::ConfigInvalid, "role counts must be non-negative, total >= 1");
  require(p.party_min_governance >= 1, Errc::ConfigInvalid,
          "party_min_governance must be >= 1");
  require(p.audit_threshold > Rational(0) && p.audit_threshold <= Rational(1),
          Errc::ConfigInvalid, "audit_threshold must be in (0,1]");
  require(p.arbitration_threshold > Rational(0) && p.arbitration_threshold <= Rational(1),
          Errc::ConfigInvalid, "arbitration_threshold must be in (0,1]");
}

void load_rate(const Json& j, ExchangeRate& rate, RatePolicy& policy) {
  check_known_keys(j, {"initial", "kappa", "min", "max", "gold_band_lower",
                       "gold_band_upper", "peg_series"},
                   "rate");
  rate.labor_per_capital = rational_field(j, "initial", rate.labor_per_capital);
  rate.gold_band_lower = rational_field(j, "gold_band_lower", rate.gold_band_lower);
  rate.gold_band_upper = rational_field(j, "gold_band_upper", rate.gold_band_upper);
  policy.kappa = rational_field(j, "kappa", policy.kappa);
  policy.min_rate = rational_field(j, "min", policy.min_rate);
  policy.max_rate = rational_field(j, "max", policy.max_rate);
  require(rate.labor_per_capital > Rational(0), Errc::ConfigInvalid,
          "initial rate must be positive");
  require(policy.kappa > Rational(0) && policy.kappa <= Rational(1),
          Errc::ConfigInvalid, "kappa must be in (0,1]");
  require(policy.min_rate > Rational(0) && policy.min_rate <= policy.max_rate,
          Errc::ConfigInvalid, "rate clamp bounds invalid");
  require(rate.gold_band_lower > Rational(0) &&
              rate.gold_band_lower <= rate.gold_band_upper,
          Errc::ConfigInvalid, "gold band invalid");
}

void load_supervision(const Json& j, SupervisionConfig& s) {
  check_known_keys(
      j, {"initial_credit", "tipoff_credit_floor", "delta_guilty", "delta_false",
          "delta_investigation", "warning_line", "hard_floor", "content_reward",
          "tipoff_reward", "deposit_min", "satisfaction_weight", "audit_interval",
          "rebuttal_window", "arbitration_interval"},
      "supervision");
  s.initial_credit = static_cast<int>(int_field(j, "initial_credit", s.initial_credit));
  s.tipoff_credit_floor =
      static_cast<int>(int_field(j, "tipoff_credit_floor", s.tipoff_credit_floor));
  s.delta_guilty = static_cast<int>(int_field(j, "delta_guilty", s.delta_guilty));
  s.delta_false = static_cast<int>(int_field(j, "delta_false", s.delta_false));
  s.delta_investigation =
      static_cast<int>(int_field(j, "delta_investigation", s.delta_investigation));
  s.warning_line = static_cast<int>(int_field(j, "warning_line", s.warning_line));
  s.hard_floor = static_cast<int>(int_field(j, "hard_floor", s.hard_floor));
  s.content_reward = int_field(j, "content_reward", s.content_reward);
  s.tipoff_reward = int_field(j, "tipoff_reward", s.tipoff_reward);
  s.deposit_min = int_field(j, "deposit_min", s.deposit_min);
  s.satisfaction_weight =
      static_cast<int>(int_field(j, "satisfaction_weight", s.satisfaction_weight));
  s.audit_interval = static_cast<int>(int_field(j, "audit_interval", s.audit_interval));
  s.rebuttal_window = static_cast<int>(int_field(j, "rebuttal_window", s.rebuttal_window));
  s.arbitration_interval =
      static_cast<int>(int_field(j, "arbitration_interval", s.arbitration_interval));
  require(s.initial_credit >= 0 && s.initial_credit <= 100, Errc::ConfigInvalid,
          "initial_credit must be in [0,100]");
  require(s.hard_floor <= s.warning_line, Errc::ConfigInvalid,
          "hard_floor must not exceed warning_line");
  require(s.audit_interval >= 1 && s.rebuttal_window >= 1 && s.arbitration_interval >= 1,
          Errc::ConfigInvalid, "intervals must be >= 1 epoch");
  require(s.content_reward >= 0 && s.tipoff_reward >= 0 && s.deposit_min >= 1,
          Errc::ConfigInvalid, "supervision token constants invalid");
}

void load_crowdfunding(const Json& j, CrowdfundingConfig& c) {
  check_known_keys(j, {"creator_credit_floor", "council_investment_weight",
                       "council_governance_weight", "tranche_period", "gas_fee",
                       "max_active_projects"},
                   "crowdfunding");
  c.creator_credit_floor = int_field(j, "creator_credit_floor", c.creator_credit_floor);
  c.council_investment_weight =
      rational_field(j, "council_investment_weight", c.council_investment_weight);
  c.council_governance_weight =
      rational_field(j, "council_governance_weight", c.council_governance_weight);
  c.tranche_period = static_cast<int>(int_field(j, "tranche_period", c.tranche_period));
  c.gas_fee = int_field(j, "gas_fee", c.gas_fee);
  c.max_active_projects =
      static_cast<int>(int_field(j, "max_active_projects", c.max_active_projects));
  require(c.tranche_period >= 1, Errc::ConfigInvalid, "tranche_period must be >= 1");
  require(c.council_investment_weight + c.council_governance_weight == Rational(1),
          Errc::ConfigInvalid, "council weights must sum to 1");
}

void load_regulator(const Json& j, RegulatorConfig& r) {
  check_known_keys(j, {"target_valid_ratio", "dead_band", "quota_gain",
                       "incentive_gain", "quota_min", "quota_max", "incentive_min",
                       "incentive_max", "metrics_window", "recovery_bound_epochs"},
                   "regulator");
  r.target_valid_ratio = rational_field(j, "target_valid_ratio", r.target_valid_ratio);
  r.dead_band = rational_field(j, "dead_band", r.dead_band);
  r.quota_gain = rational_field(j, "quota_gain", r.quota_gain);
  r.incentive_gain = rational_field(j, "incentive_gain", r.incentive_gain);
  r.quota_min = rational_field(j, "quota_min", r.quota_min);
  r.quota_max = rational_field(j, "quota_max", r.quota_max);
  r.incentive_min = rational_field(j, "incentive_min", r.incentive_min);
  r.incentive_max = rational_field(j, "incentive_max", r.incentive_max);
  r.metrics_window = static_cast<int>(int_field(j, "metrics_window", r.metrics_window));
  r.recovery_bound_epochs = static_cast<int>(
      int_field(j, "recovery_bound_epochs", r.recovery_bound_epochs));
  require(r.quota_gain >= Rational(0) && r.quota_gain < Rational(1), Errc::ConfigInvalid,
          "quota_gain must be in [0,1)");
  require(r.incentive_gain >= Rational(0), Errc::ConfigInvalid,
          "incentive_gain must be non-negative");
  require(r.quota_min <= r.quota_max && r.incentive_min <= r.incentive_max,
          Errc::ConfigInvalid, "regulator bounds inverted");
  require(r.metrics_window >= 1, Errc::ConfigInvalid, "metrics_window must be >= 1");
}

}  // namespace

ParameterSet apply_params_delta(const ParameterSet& current, const Json& delta) {
  ParameterSet next = current;
  load_params(delta, next);
  return next;
}

WorldConfig WorldConfig::from_json(const Json& j) {
  WorldConfig cfg;
  if (j.contains("params")) load_params(j.at("params"), cfg.params);
  if (j.contains("rate")) load_rate(j.at("rate"), cfg.rate, cfg.rate_policy);
  if (j.contains("supervision")) load_supervision(j.at("supervision"), cfg.supervision);
  if (j.contains("crowdfunding")) load_crowdfunding(j.at("crowdfunding"), cfg.crowdfunding);
  if (j.contains("regulator")) load_regulator(j.at("regulator"), cfg.regulator);
  if (j.contains("platform_account")) {
    cfg.platform_account = j.at("platform_account").get<std::string>();
  }
  cfg.content_ttl_epochs =
      static_cast<int>(int_field(j, "content_ttl_epochs", cfg.content_ttl_epochs));
  require(cfg.content_ttl_epochs >= 2, Errc::ConfigInvalid,
          "content_ttl_epochs must be >= 2");
  require(!cfg.platform_account.empty(), Errc::ConfigInvalid,
          "platform_account must be nonempty");
  return cfg;
}

}  // namespace dcc
