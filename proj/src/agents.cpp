#include "dcc/agents.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

namespace dcc {

std::string policy_prefix(const std::string& policy) {
  if (policy == "honest-creator") return "cre";
  if (policy == "plagiarist") return "plg";
  if (policy == "diligent-investor") return "inv";
  if (policy == "fickle-investor") return "fic";
  if (policy == "active-governor") return "gov";
  if (policy == "passive-holder") return "hld";
  if (policy == "honest-reporter") return "rep";
  if (policy == "false-reporter") return "fls";
  fail(Errc::ConfigInvalid, "unknown policy '" + policy + "'");
}

std::vector<Agent> expand_agents(const std::map<std::string, int>& counts) {
  std::vector<Agent> agents;
  for (const auto& [policy, count] : counts) {
    std::string prefix = policy_prefix(policy);
    for (int i = 0; i < count; ++i) {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "%02d", i);
      agents.push_back(Agent{prefix + "-" + buf, policy});
    }
  }
  std::sort(agents.begin(), agents.end(),
            [](const Agent& a, const Agent& b) { return a.id < b.id; });
  return agents;
}

}  // namespace dcc
