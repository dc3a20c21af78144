#include "dcc/econ.hpp"

#include <algorithm>
#include <sstream>

namespace dcc {

int StrategyProfile::index() const {
  return (labor == Strategy::NotInvest ? 4 : 0) |
         (capital == Strategy::NotInvest ? 2 : 0) |
         (governance == Strategy::NotInvest ? 1 : 0);
}

StrategyProfile StrategyProfile::from_index(int index) {
  StrategyProfile p;
  p.labor = (index & 4) ? Strategy::NotInvest : Strategy::Invest;
  p.capital = (index & 2) ? Strategy::NotInvest : Strategy::Invest;
  p.governance = (index & 1) ? Strategy::NotInvest : Strategy::Invest;
  return p;
}

std::string StrategyProfile::label() const {
  std::string out(3, 'I');
  if (labor == Strategy::NotInvest) out[0] = 'N';
  if (capital == Strategy::NotInvest) out[1] = 'N';
  if (governance == Strategy::NotInvest) out[2] = 'N';
  return out;
}

StrategyProfile StrategyProfile::parse(std::string_view label) {
  require(label.size() == 3, Errc::ParseError,
          "profile label must be 3 letters, got '" + std::string(label) + "'");
  StrategyProfile p;
  Strategy* slots[3] = {&p.labor, &p.capital, &p.governance};
  for (int i = 0; i < 3; ++i) {
    char c = label[static_cast<size_t>(i)];
    require(c == 'I' || c == 'N', Errc::ParseError,
            "profile letters must be I or N, got '" + std::string(label) + "'");
    *slots[i] = c == 'I' ? Strategy::Invest : Strategy::NotInvest;
  }
  return p;
}

StrategyProfile StrategyProfile::with_player(int player, Strategy s) const {
  StrategyProfile out = *this;
  switch (player) {
    case 0: out.labor = s; break;
    case 1: out.capital = s; break;
    default: out.governance = s; break;
  }
  return out;
}

Strategy StrategyProfile::player(int player) const {
  switch (player) {
    case 0: return labor;
    case 1: return capital;
    default: return governance;
  }
}

const Rational& PayoffTriple::player(int player) const {
  switch (player) {
    case 0: return labor;
    case 1: return capital;
    default: return governance;
  }
}

PayoffMatrix3 PayoffMatrix3::parse(std::string_view text) {
  PayoffMatrix3 matrix;
  std::array<bool, 8> seen{};
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  int rows = 0;
  while (std::getline(in, line)) {
    line_no++;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string label, l, c, g;
    if (!(fields >> label)) continue;  // blank
    if (!(fields >> l >> c >> g)) {
      fail(Errc::ParseError, "line " + std::to_string(line_no) +
                                 ": expected '<profile> <u_L> <u_C> <u_G>'");
    }
    std::string extra;
    if (fields >> extra) {
      fail(Errc::ParseError, "line " + std::to_string(line_no) + ": trailing '" + extra + "'");
    }
    StrategyProfile profile;
    PayoffTriple payoff;
    try {
      profile = StrategyProfile::parse(label);
      payoff.labor = Rational::parse(l);
      payoff.capital = Rational::parse(c);
      payoff.governance = Rational::parse(g);
    } catch (const DccError& e) {
      fail(Errc::ParseError, "line " + std::to_string(line_no) + ": " + e.what());
    }
    int index = profile.index();
    require(!seen[static_cast<size_t>(index)], Errc::ParseError,
            "line " + std::to_string(line_no) + ": duplicate profile " + label);
    seen[static_cast<size_t>(index)] = true;
    matrix.at(profile) = payoff;
    rows++;
  }
  require(rows == 8, Errc::ParseError,
          "matrix needs all 8 profiles, got " + std::to_string(rows));
  return matrix;
}

std::string PayoffMatrix3::str() const {
  std::string out;
  for (int i = 0; i < 8; ++i) {
    StrategyProfile p = StrategyProfile::from_index(i);
    const PayoffTriple& t = at(p);
    out += p.label();
    out += ' ';
    out += t.labor.str();
    out += ' ';
    out += t.capital.str();
    out += ' ';
    out += t.governance.str();
    out += '\n';
  }
  return out;
}

std::vector<StrategyProfile> find_pure_nash(const PayoffMatrix3& matrix) {
  std::vector<StrategyProfile> out;
  for (int i = 0; i < 8; ++i) {
    StrategyProfile profile = StrategyProfile::from_index(i);
    bool equilibrium = true;
    for (int player = 0; player < 3 && equilibrium; ++player) {
      Strategy current = profile.player(player);
      Strategy other = current == Strategy::Invest ? Strategy::NotInvest : Strategy::Invest;
      StrategyProfile deviated = profile.with_player(player, other);
      if (matrix.at(deviated).player(player) > matrix.at(profile).player(player)) {
        equilibrium = false;
      }
    }
    if (equilibrium) out.push_back(profile);
  }
  return out;
}

std::vector<DeviationWitness> deviation_witnesses(const PayoffMatrix3& matrix) {
  std::vector<DeviationWitness> out;
  for (int i = 0; i < 8; ++i) {
    StrategyProfile profile = StrategyProfile::from_index(i);
    for (int player = 0; player < 3; ++player) {
      Strategy current = profile.player(player);
      Strategy other = current == Strategy::Invest ? Strategy::NotInvest : Strategy::Invest;
      StrategyProfile deviated = profile.with_player(player, other);
      Rational gain = matrix.at(deviated).player(player) - matrix.at(profile).player(player);
      if (gain > Rational(0)) {
        out.push_back({profile, player, deviated, gain});
        break;  // one witness per excluded profile
      }
    }
  }
  return out;
}

bool is_pareto_optimal(const StrategyProfile& profile, const PayoffMatrix3& matrix) {
  const PayoffTriple& here = matrix.at(profile);
  for (int i = 0; i < 8; ++i) {
    StrategyProfile other = StrategyProfile::from_index(i);
    if (other == profile) continue;
    const PayoffTriple& there = matrix.at(other);
    bool weakly_better = there.labor >= here.labor && there.capital >= here.capital &&
                         there.governance >= here.governance;
    bool somewhere_strict = there.labor > here.labor || there.capital > here.capital ||
                            there.governance > here.governance;
    if (weakly_better && somewhere_strict) return false;
  }
  return true;
}

std::vector<StrategyProfile> pareto_set(const PayoffMatrix3& matrix) {
  std::vector<StrategyProfile> out;
  for (int i = 0; i < 8; ++i) {
    StrategyProfile profile = StrategyProfile::from_index(i);
    if (is_pareto_optimal(profile, matrix)) out.push_back(profile);
  }
  return out;
}

std::optional<UtilityViolation> check_utility_conditions(
    const UtilityGrid& grid, size_t star_capital, size_t star_labor,
    size_t star_governance) {
  require(star_capital < grid.capital_axis.size() &&
              star_labor < grid.labor_axis.size() &&
              star_governance < grid.governance_axis.size(),
          Errc::OutOfBounds, "starred allocation outside the grid");
  for (size_t ic = 0; ic < grid.capital_axis.size(); ++ic) {
    for (size_t il = 0; il < grid.labor_axis.size(); ++il) {
      for (size_t ig = 0; ig < grid.governance_axis.size(); ++ig) {
        // community 0 = Capital: pin X_C at the star, vary the rest
        if (grid.utility(0, star_capital, il, ig) < grid.utility(0, ic, il, ig)) {
          return UtilityViolation{0, ic, il, ig};
        }
        if (grid.utility(1, ic, star_labor, ig) < grid.utility(1, ic, il, ig)) {
          return UtilityViolation{1, ic, il, ig};
        }
        if (grid.utility(2, ic, il, star_governance) < grid.utility(2, ic, il, ig)) {
          return UtilityViolation{2, ic, il, ig};
        }
      }
    }
  }
  return std::nullopt;
}

RegulatorState regulate(const RegulatorState& state, const RegulatorConfig& cfg,
                        const Rational& valid_ratio) {
  RegulatorState next = state;
  Rational low = cfg.target_valid_ratio - cfg.dead_band;
  Rational high = cfg.target_valid_ratio + cfg.dead_band;
  if (valid_ratio < low) {
    next.quota = state.quota * (Rational(1) - cfg.quota_gain);
    next.incentive = state.incentive * (Rational(1) + cfg.incentive_gain);
  } else if (valid_ratio > high) {
    next.quota = state.quota / (Rational(1) - cfg.quota_gain);
    next.incentive = state.incentive / (Rational(1) + cfg.incentive_gain);
  } else {
    return next;  // inside the dead band
  }
  next.quota = clamp(next.quota, cfg.quota_min, cfg.quota_max).quantize_floor(1000000);
  next.incentive =
      clamp(next.incentive, cfg.incentive_min, cfg.incentive_max).quantize_floor(1000000);
  return next;
}

void RegulatorState::write_canonical(CanonicalWriter& w) const {
  w.begin_object();
  w.kv("incentive", incentive);
  w.kv("quota", quota);
  w.end_object();
}

}  // namespace dcc
