#include "dcc/governance.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdio>
#include <numeric>

namespace dcc {

namespace mp = boost::multiprecision;

std::string_view to_string(Role role) {
  switch (role) {
    case Role::Chief:
      return "chief";
    case Role::Senatorial:
      return "senatorial";
    case Role::Arbitral:
      return "arbitral";
  }
  return "?";
}

Role role_from_string(std::string_view name) {
  if (name == "chief") return Role::Chief;
  if (name == "senatorial") return Role::Senatorial;
  if (name == "arbitral") return Role::Arbitral;
  fail(Errc::ParseError, "unknown role '" + std::string(name) + "'");
}

std::set<AccountId> Assembly::holders_with(Role role) const {
  std::set<AccountId> out;
  for (const Seat& seat : seats) {
    if (seat.role == role) out.insert(seat.holder);
  }
  return out;
}

bool Assembly::holds_role(const AccountId& account, Role role) const {
  for (const Seat& seat : seats) {
    if (seat.role == role && seat.holder == account) return true;
  }
  return false;
}

std::map<std::string, int> allocate_seats(const std::map<std::string, Amount>& party_tokens,
                                          int total_seats) {
  require(total_seats >= 1, Errc::OutOfBounds, "total seats must be >= 1");
  Amount total_tokens = 0;
  for (const auto& [id, tokens] : party_tokens) {
    require(tokens >= 0, Errc::OutOfBounds, "negative token sum");
    total_tokens += tokens;
  }
  require(total_tokens > 0, Errc::NoEligibleParties,
          "no party holds Governance tokens");

  // quota_p = S * t_p / T; floor first, then distribute the shortfall by
  // largest fractional remainder (ties: lexicographic party id).
  std::map<std::string, int> counts;
  std::vector<std::pair<__int128, std::string>> remainders;  // remainder * T
  int assigned = 0;
  for (const auto& [id, tokens] : party_tokens) {
    __int128 numer = static_cast<__int128>(total_seats) * tokens;
    int base = static_cast<int>(numer / total_tokens);
    __int128 rem = numer % total_tokens;
    counts[id] = base;
    assigned += base;
    remainders.push_back({rem, id});
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  int leftover = total_seats - assigned;
  for (int i = 0; i < leftover; ++i) counts[remainders[static_cast<size_t>(i)].second]++;
  return counts;
}

std::vector<AccountId> select_members(const Party& party, int seat_count,
                                      const std::string& seed_hex,
                                      const std::map<AccountId, Amount>& weights) {
  require(!party.members.empty(), Errc::EmptyParty, party.id);
  std::vector<AccountId> holders;
  holders.reserve(static_cast<size_t>(seat_count));
  for (int j = 0; j < seat_count; ++j) {
    const AccountId* best = nullptr;
    Digest256 best_key{};
    std::string seat_label = std::to_string(j);
    for (const AccountId& member : party.members) {
      Amount tickets = 1;
      if (!weights.empty()) {
        auto it = weights.find(member);
        tickets = it == weights.end() ? 0 : it->second;
      }
      for (Amount t = 0; t < tickets; ++t) {
        Digest256 key = weights.empty()
                            ? digest_fields({seed_hex, party.id, seat_label, member})
                            : digest_fields({seed_hex, party.id, seat_label, member,
                                             std::to_string(t)});
        if (best == nullptr || key < best_key) {
          best = &member;
          best_key = key;
        }
      }
    }
    require(best != nullptr, Errc::EmptyParty, party.id + ": no member holds a ticket");
    holders.push_back(*best);
  }
  return holders;
}

namespace {

mp::cpp_int digest_to_int(const Digest256& d) {
  mp::cpp_int value = 0;
  for (std::uint8_t byte : d.bytes) {
    value <<= 8;
    value += byte;
  }
  return value;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  return a / std::gcd(a, b) * b;
}

}  // namespace

Assembly assign_roles(Epoch epoch, const std::string& seed_hex,
                      std::vector<Seat> selected, const RoleCounts& counts,
                      const std::optional<Nomination>& nomination,
                      int platform_reserved, const AccountId& platform_account) {
  require(counts.chief >= 0 && counts.senatorial >= 0 && counts.arbitral >= 0 &&
              counts.total() == static_cast<int>(selected.size()),
          Errc::RoleCountMismatch,
          "role counts sum " + std::to_string(counts.total()) + " != seats " +
              std::to_string(selected.size()));

  // Weighted rank key per seat. The raw digest U is mapped to the race key
  // -ln(U / 2^256) / w; a nominated holder's weight w = boost multiplies its
  // odds of ranking lowest. Comparing -ln(u)/w across seats is done exactly
  // in integers: -ln(u_i)/w_i < -ln(u_j)/w_j  <=>  u_i^(L/w_i) > u_j^(L/w_j)
  // at a common scale, L = lcm of weights.
  std::int64_t boost_num = 1, boost_den = 1;
  if (nomination && nomination->epoch_effective == epoch) {
    require(nomination->boost > Rational(1), Errc::OutOfBounds, "boost must exceed 1");
    boost_num = nomination->boost.num();
    boost_den = nomination->boost.den();
  }
  // weights: nominated = boost_num, default = boost_den (scaled by boost_den)
  const std::int64_t weight_lcm = lcm64(boost_num, boost_den);
  const std::int64_t exp_default = weight_lcm / boost_den;
  const std::int64_t exp_nominated = weight_lcm / boost_num;

  struct Ranked {
    mp::cpp_int key;        // u^exponent
    std::int64_t exponent;  // scale: key / 2^(256*exponent)
    int seat_index;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(selected.size());
  for (const Seat& seat : selected) {
    Digest256 d = digest_fields(
        {seed_hex, "role", std::to_string(seat.index), seat.holder});
    bool nominated = nomination && nomination->epoch_effective == epoch &&
                     nomination->candidates.count(seat.holder) > 0;
    std::int64_t exponent = nominated ? exp_nominated : exp_default;
    mp::cpp_int u = digest_to_int(d);
    mp::cpp_int key = 1;
    for (std::int64_t i = 0; i < exponent; ++i) key *= u;
    ranked.push_back({std::move(key), exponent, seat.index});
  }
  // Sort by race key ascending == u^(1/w) descending; exact cross-scale
  // comparison: u_a^ea / 2^(256 ea) > u_b^eb / 2^(256 eb).
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.exponent == b.exponent) {
      if (a.key != b.key) return a.key > b.key;
      return a.seat_index < b.seat_index;
    }
    mp::cpp_int lhs = a.key << static_cast<unsigned>(256 * b.exponent);
    mp::cpp_int rhs = b.key << static_cast<unsigned>(256 * a.exponent);
    if (lhs != rhs) return lhs > rhs;
    return a.seat_index < b.seat_index;
  });

  std::vector<Role> role_by_rank;
  role_by_rank.reserve(selected.size());
  for (int i = 0; i < counts.arbitral; ++i) role_by_rank.push_back(Role::Arbitral);
  for (int i = 0; i < counts.senatorial; ++i) role_by_rank.push_back(Role::Senatorial);
  for (int i = 0; i < counts.chief; ++i) role_by_rank.push_back(Role::Chief);

  Assembly assembly;
  assembly.epoch = epoch;
  assembly.seed_hex = seed_hex;
  assembly.seats = std::move(selected);
  int arbitral_seen = 0;
  for (std::size_t rank = 0; rank < ranked.size(); ++rank) {
    Seat& seat = assembly.seats[static_cast<size_t>(ranked[rank].seat_index)];
    seat.role = role_by_rank[rank];
    if (seat.role == Role::Arbitral) {
      // Phase-down: the first `platform_reserved` arbitral seats in ranked
      // order stay hosted by the platform instead of the elected holder.
      if (arbitral_seen < platform_reserved) {
        seat.holder = platform_account;
        seat.party = "";
      }
      arbitral_seen++;
    }
  }
  std::sort(assembly.seats.begin(), assembly.seats.end(),
            [](const Seat& a, const Seat& b) { return a.index < b.index; });
  return assembly;
}

void GovernanceState::apply_pending_membership() {
  for (const auto& [node, target] : pending_membership) {
    auto current = membership.find(node);
    if (current != membership.end()) {
      auto party = parties.find(current->second);
      if (party != parties.end()) party->second.members.erase(node);
      membership.erase(current);
    }
    if (!target.empty()) {
      auto party = parties.find(target);
      if (party != parties.end()) {
        party->second.members.insert(node);
        membership[node] = target;
      }
    }
  }
  pending_membership.clear();
  // Parties whose last member left dissolve.
  for (auto it = parties.begin(); it != parties.end();) {
    if (it->second.members.empty()) {
      it = parties.erase(it);
    } else {
      ++it;
    }
  }
}

const Party& form_party(GovernanceState& gov, const Ledger& ledger,
                        const AccountId& founder, const std::string& charter_digest,
                        Amount min_governance) {
  require(ledger.has_account(founder), Errc::UnknownAccount, founder);
  require(ledger.balance(founder, TokenKind::Governance) >= min_governance,
          Errc::InsufficientGovernanceTokens,
          founder + " needs " + std::to_string(min_governance) + " Governance");
  bool in_party = gov.membership.count(founder) > 0;
  auto staged = gov.pending_membership.find(founder);
  if (staged != gov.pending_membership.end()) in_party = !staged->second.empty();
  require(!in_party, Errc::AlreadyInParty, founder);

  char buf[16];
  std::snprintf(buf, sizeof(buf), "%05llu", static_cast<unsigned long long>(gov.next_party++));
  Party party;
  party.id = std::string("party-") + buf;
  party.charter_digest = charter_digest;
  party.founder = founder;
  party.members.insert(founder);  // single-node parties are permitted
  auto [it, inserted] = gov.parties.emplace(party.id, std::move(party));
  gov.membership[founder] = it->first;
  gov.pending_membership.erase(founder);
  return it->second;
}

void join_party(GovernanceState& gov, const Ledger& ledger, const AccountId& node,
                const std::string& party_id) {
  require(gov.parties.count(party_id) > 0, Errc::UnknownParty, party_id);
  require(ledger.has_account(node), Errc::UnknownAccount, node);
  require(ledger.balance(node, TokenKind::Governance) >= 1,
          Errc::InsufficientGovernanceTokens, node + " holds no Governance");
  bool in_party = gov.membership.count(node) > 0;
  auto staged = gov.pending_membership.find(node);
  if (staged != gov.pending_membership.end()) in_party = !staged->second.empty();
  require(!in_party, Errc::AlreadyInParty, node);
  gov.pending_membership[node] = party_id;  // effective next epoch
}

void leave_party(GovernanceState& gov, const AccountId& node) {
  bool in_party = gov.membership.count(node) > 0;
  auto staged = gov.pending_membership.find(node);
  if (staged != gov.pending_membership.end()) in_party = !staged->second.empty();
  require(in_party, Errc::NotAMember, node);
  gov.pending_membership[node] = "";  // seat retained until epoch end
}

Assembly run_election(const GovernanceState& gov, const Ledger& ledger, Epoch epoch,
                      const std::string& seed_hex, const ParameterSet& params,
                      const AccountId& platform_account) {
  // Voting power derives solely from Governance tokens.
  std::map<std::string, Amount> party_tokens;
  for (const auto& [id, party] : gov.parties) {
    Amount sum = 0;
    for (const AccountId& member : party.members) {
      sum += ledger.balance(member, TokenKind::Governance);
    }
    if (sum > 0) party_tokens[id] = sum;
  }
  std::map<std::string, int> counts = allocate_seats(party_tokens, params.roles.total());

  std::vector<Seat> seats;
  seats.reserve(static_cast<size_t>(params.roles.total()));
  int index = 0;
  for (const auto& [party_id, seat_count] : counts) {
    if (seat_count == 0) continue;
    std::map<AccountId, Amount> tickets;
    if (params.weighted_lottery) {
      for (const AccountId& member : gov.parties.at(party_id).members) {
        Amount governance = ledger.balance(member, TokenKind::Governance);
        if (governance > 0) tickets[member] = governance;
      }
    }
    auto holders = select_members(gov.parties.at(party_id), seat_count, seed_hex, tickets);
    for (const AccountId& holder : holders) {
      seats.push_back(Seat{index++, Role::Arbitral, holder, party_id});
    }
  }
  int platform_reserved =
      static_cast<int>(floor_mul(params.roles.arbitral, params.platform_supervision_share));
  return assign_roles(epoch, seed_hex, std::move(seats), params.roles, gov.nomination,
                      platform_reserved, platform_account);
}

void ParameterSet::write_canonical(CanonicalWriter& w) const {
  w.begin_object();
  w.kv("amendment_supermajority", amendment_supermajority);
  w.kv("arbitration_threshold", arbitration_threshold);
  w.kv("audit_threshold", audit_threshold);
  w.kv("impeachment_supermajority", impeachment_supermajority);
  w.kv("incentive_pool_split", incentive_pool_split);
  w.kv("labor_to_governance", labor_to_governance);
  w.kv("party_min_governance", party_min_governance);
  w.kv("platform_cutoff", platform_cutoff);
  w.kv("platform_decay", platform_decay);
  w.kv("platform_supervision_share", platform_supervision_share);
  w.key("roles");
  w.begin_object();
  w.kv("arbitral", static_cast<std::int64_t>(roles.arbitral));
  w.kv("chief", static_cast<std::int64_t>(roles.chief));
  w.kv("senatorial", static_cast<std::int64_t>(roles.senatorial));
  w.end_object();
  w.kv("split_max", split_max);
  w.kv("split_min", split_min);
  w.kv_bool("weighted_lottery", weighted_lottery);
  w.end_object();
}

void GovernanceState::write_canonical(CanonicalWriter& w) const {
  w.begin_object();
  w.key("assembly");
  w.begin_object();
  w.kv("epoch", assembly.epoch);
  w.key("seats");
  w.begin_array();
  for (const Seat& seat : assembly.seats) {
    w.begin_object();
    w.kv("holder", seat.holder);
    w.kv("index", static_cast<std::int64_t>(seat.index));
    w.kv("party", seat.party);
    w.kv("role", to_string(seat.role));
    w.end_object();
  }
  w.end_array();
  w.kv("seed", assembly.seed_hex);
  w.end_object();
  w.key("membership");
  w.begin_object();
  for (const auto& [node, party] : membership) w.kv(node, party);
  w.end_object();
  w.key("next_party");
  w.value_uint(next_party);
  w.key("nomination");
  if (nomination) {
    w.begin_object();
    w.kv("boost", nomination->boost);
    w.key("candidates");
    w.begin_array();
    for (const AccountId& c : nomination->candidates) w.value_string(c);
    w.end_array();
    w.kv("epoch_effective", nomination->epoch_effective);
    w.end_object();
  } else {
    w.value_null();
  }
  w.key("parties");
  w.begin_object();
  for (const auto& [id, party] : parties) {
    w.key(id);
    w.begin_object();
    w.kv("charter", party.charter_digest);
    w.kv("founder", party.founder);
    w.key("members");
    w.begin_array();
    for (const AccountId& m : party.members) w.value_string(m);
    w.end_array();
    w.end_object();
  }
  w.end_object();
  w.key("pending_membership");
  w.begin_object();
  for (const auto& [node, target] : pending_membership) w.kv(node, target);
  w.end_object();
  w.end_object();
}

}  // namespace dcc
