#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "dcc/crowdfunding.hpp"
#include "dcc/econ.hpp"
#include "dcc/governance.hpp"
#include "dcc/ledger.hpp"
#include "dcc/supervision.hpp"

namespace dcc {

using Json = nlohmann::json;

// Semantic constants of a run, established once by the genesis event. The
// scenario file is closed-world: unknown keys are rejected at load.
struct WorldConfig {
  ParameterSet params;
  ExchangeRate rate;
  RatePolicy rate_policy;
  SupervisionConfig supervision;
  CrowdfundingConfig crowdfunding;
  RegulatorConfig regulator;
  AccountId platform_account{"platform"};
  // Accepted content records with no live tip-off older than this many
  // epochs are folded into an archive digest to keep snapshots bounded.
  int content_ttl_epochs{6};

  static WorldConfig from_json(const Json& j);
};

// Rejects unknown keys; `where` names the section in the error.
void check_known_keys(const Json& object, const std::vector<std::string>& known,
                      const std::string& where);

// Applies a partial params object onto current values; closed-world keys,
// same range validation as the scenario loader.
ParameterSet apply_params_delta(const ParameterSet& current, const Json& delta);

Rational rational_field(const Json& object, const std::string& key,
                        const Rational& fallback);
std::int64_t int_field(const Json& object, const std::string& key,
                       std::int64_t fallback);

}  // namespace dcc
