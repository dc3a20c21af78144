#pragma once

#include <map>
#include <string>
#include <vector>

#include "dcc/hash.hpp"
#include "dcc/rational.hpp"
#include "dcc/types.hpp"

namespace dcc {

// Counter-based per-(agent, epoch) random stream derived from the master
// seed. Streams are independent: adding an agent never perturbs another
// agent's draws.
class AgentStream {
 public:
  AgentStream(std::uint64_t master_seed, const AccountId& agent, Epoch epoch)
      : seed_(std::to_string(master_seed)), agent_(agent), epoch_(std::to_string(epoch)) {}

  std::uint64_t next_u64() {
    Digest256 d = digest_fields({"rng", seed_, agent_, epoch_, std::to_string(counter_++)});
    std::uint64_t out = 0;
    for (int i = 0; i < 8; ++i) out = (out << 8) | d.bytes[static_cast<size_t>(i)];
    return out;
  }

  // True with probability p (p in [0,1]), integer-exact threshold draw.
  bool chance(const Rational& p) {
    if (p.num() <= 0) return false;
    if (p.num() >= p.den()) return true;
    unsigned __int128 threshold =
        (static_cast<unsigned __int128>(p.num()) << 64) / static_cast<unsigned __int128>(p.den());
    return next_u64() < static_cast<std::uint64_t>(threshold);
  }

  // Uniform pick in [0, n).
  std::uint64_t pick(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

 private:
  std::string seed_;
  std::string agent_;
  std::string epoch_;
  std::uint64_t counter_{0};
};

struct Agent {
  AccountId id;
  std::string policy;
};

// Expands the population spec into accounts: "<prefix>-<index>" per policy,
// e.g. honest-creator 2 -> cre-00, cre-01. Returned sorted by account id.
std::vector<Agent> expand_agents(const std::map<std::string, int>& counts);

std::string policy_prefix(const std::string& policy);

}  // namespace dcc
