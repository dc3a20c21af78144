#include <doctest.h>

#include <set>

#include "dcc/econ.hpp"
#include "dcc/metrics.hpp"
#include "dcc/world.hpp"

using namespace dcc;

namespace {

// Independent exhaustive-deviation oracle, written against the raw cells
// rather than the profile helpers: position bit-twiddling only.
std::set<int> oracle_nash_indexes(const PayoffMatrix3& matrix) {
  std::set<int> out;
  for (int idx = 0; idx < 8; ++idx) {
    bool ok = true;
    for (int player = 0; player < 3 && ok; ++player) {
      int bit = player == 0 ? 4 : player == 1 ? 2 : 1;
      int other = idx ^ bit;
      const PayoffTriple& here = matrix.at(StrategyProfile::from_index(idx));
      const PayoffTriple& there = matrix.at(StrategyProfile::from_index(other));
      const Rational& u_here =
          player == 0 ? here.labor : player == 1 ? here.capital : here.governance;
      const Rational& u_there =
          player == 0 ? there.labor : player == 1 ? there.capital : there.governance;
      if (u_there > u_here) ok = false;
    }
    if (ok) out.insert(idx);
  }
  return out;
}

std::set<int> indexes_of(const std::vector<StrategyProfile>& profiles) {
  std::set<int> out;
  for (const StrategyProfile& p : profiles) out.insert(p.index());
  return out;
}

PayoffMatrix3 random_matrix(std::uint64_t& x) {
  PayoffMatrix3 m;
  for (int i = 0; i < 8; ++i) {
    StrategyProfile p = StrategyProfile::from_index(i);
    auto draw = [&x]() {
      x = x * 6364136223846793005ull + 1442695040888963407ull;
      return Rational(static_cast<std::int64_t>((x >> 40) % 11) - 5,
                      1 + static_cast<std::int64_t>((x >> 56) % 4));
    };
    m.at(p) = PayoffTriple{draw(), draw(), draw()};
  }
  return m;
}

}  // namespace

TEST_CASE("profile labels and indexes round-trip") {
  for (int i = 0; i < 8; ++i) {
    StrategyProfile p = StrategyProfile::from_index(i);
    CHECK(p.index() == i);
    CHECK(StrategyProfile::parse(p.label()) == p);
  }
  CHECK(StrategyProfile::parse("III").index() == 0);
  CHECK(StrategyProfile::parse("NNN").index() == 7);
  CHECK_THROWS_AS(StrategyProfile::parse("IXI"), DccError);
  CHECK_THROWS_AS(StrategyProfile::parse("II"), DccError);
}

TEST_CASE("dominant cooperation yields the unique all-invest equilibrium") {
  // (I,I,I) pays 3 to everyone; any unilateral deviation pays the deviator 1
  PayoffMatrix3 m;
  for (int i = 0; i < 8; ++i) {
    StrategyProfile p = StrategyProfile::from_index(i);
    auto pay = [&p](int player) {
      return p.player(player) == Strategy::Invest ? Rational(3) : Rational(1);
    };
    m.at(p) = PayoffTriple{pay(0), pay(1), pay(2)};
  }
  auto nash = find_pure_nash(m);
  REQUIRE(nash.size() == 1);
  CHECK(nash[0].label() == "III");
  CHECK(is_pareto_optimal(nash[0], m));
}

TEST_CASE("a constant game makes every profile an equilibrium") {
  PayoffMatrix3 m;
  for (int i = 0; i < 8; ++i) {
    m.at(StrategyProfile::from_index(i)) = PayoffTriple{Rational(2), Rational(2), Rational(2)};
  }
  CHECK(find_pure_nash(m).size() == 8);
  CHECK(pareto_set(m).size() == 8);
  CHECK(deviation_witnesses(m).empty());
}

TEST_CASE("an embedded matching-pennies cycle kills every pure equilibrium") {
  // L and C play matching pennies (L wants to match, C wants to mismatch);
  // G is indifferent everywhere.
  PayoffMatrix3 m;
  for (int i = 0; i < 8; ++i) {
    StrategyProfile p = StrategyProfile::from_index(i);
    bool match = p.labor == p.capital;
    m.at(p) = PayoffTriple{match ? Rational(1) : Rational(-1),
                           match ? Rational(-1) : Rational(1), Rational(0)};
  }
  CHECK(find_pure_nash(m).empty());
  CHECK(oracle_nash_indexes(m).empty());
  // every profile gets a concrete violating deviation
  CHECK(deviation_witnesses(m).size() == 8);
}

TEST_CASE("checker agrees with the oracle on 1000 random matrices") {
  std::uint64_t x = 2024;
  for (int trial = 0; trial < 1000; ++trial) {
    PayoffMatrix3 m = random_matrix(x);
    CHECK(indexes_of(find_pure_nash(m)) == oracle_nash_indexes(m));
  }
}

TEST_CASE("returned equilibria satisfy the inequalities; excluded ones witness") {
  std::uint64_t x = 77;
  for (int trial = 0; trial < 200; ++trial) {
    PayoffMatrix3 m = random_matrix(x);
    auto nash = indexes_of(find_pure_nash(m));
    auto witnesses = deviation_witnesses(m);
    std::set<int> witnessed;
    for (const DeviationWitness& w : witnesses) {
      witnessed.insert(w.profile.index());
      CHECK(nash.count(w.profile.index()) == 0);
      // the witness is a genuine strict improvement for that player
      CHECK(m.at(w.deviation).player(w.player) - m.at(w.profile).player(w.player) ==
            w.gain);
      CHECK(w.gain > Rational(0));
    }
    for (int i = 0; i < 8; ++i) {
      CHECK((nash.count(i) == 1) == (witnessed.count(i) == 0));
    }
  }
}

TEST_CASE("pareto set: domination, ties, non-emptiness") {
  std::uint64_t x = 11;
  PayoffMatrix3 m = random_matrix(x);
  // plant strict domination: NNN strictly below III everywhere
  m.at(StrategyProfile::parse("III")) = PayoffTriple{Rational(9), Rational(9), Rational(9)};
  m.at(StrategyProfile::parse("NNN")) = PayoffTriple{Rational(0), Rational(0), Rational(0)};
  CHECK(!is_pareto_optimal(StrategyProfile::parse("NNN"), m));
  CHECK(is_pareto_optimal(StrategyProfile::parse("III"), m));

  // identical payoff triples never dominate each other
  PayoffMatrix3 tied;
  for (int i = 0; i < 8; ++i) {
    tied.at(StrategyProfile::from_index(i)) =
        PayoffTriple{Rational(1), Rational(1), Rational(1)};
  }
  tied.at(StrategyProfile::parse("III")) = PayoffTriple{Rational(2), Rational(1), Rational(1)};
  tied.at(StrategyProfile::parse("NNN")) = PayoffTriple{Rational(2), Rational(1), Rational(1)};
  CHECK(is_pareto_optimal(StrategyProfile::parse("III"), tied));
  CHECK(is_pareto_optimal(StrategyProfile::parse("NNN"), tied));

  // a finite total game always keeps at least one undominated profile
  for (int trial = 0; trial < 300; ++trial) {
    PayoffMatrix3 g = random_matrix(x);
    CHECK(!pareto_set(g).empty());
  }
}

TEST_CASE("positive affine transforms preserve Nash and Pareto sets") {
  std::uint64_t x = 321;
  for (int trial = 0; trial < 200; ++trial) {
    PayoffMatrix3 m = random_matrix(x);
    x = x * 6364136223846793005ull + 1442695040888963407ull;
    Rational a0(1 + static_cast<std::int64_t>((x >> 30) % 5), 1 + static_cast<std::int64_t>((x >> 40) % 3));
    Rational a1(1 + static_cast<std::int64_t>((x >> 43) % 5));
    Rational a2(1 + static_cast<std::int64_t>((x >> 50) % 5), 2);
    Rational b0(static_cast<std::int64_t>((x >> 33) % 9) - 4);
    Rational b1(static_cast<std::int64_t>((x >> 36) % 9) - 4);
    Rational b2(static_cast<std::int64_t>((x >> 39) % 9) - 4);
    PayoffMatrix3 t;
    for (int i = 0; i < 8; ++i) {
      StrategyProfile p = StrategyProfile::from_index(i);
      const PayoffTriple& u = m.at(p);
      t.at(p) = PayoffTriple{a0 * u.labor + b0, a1 * u.capital + b1, a2 * u.governance + b2};
    }
    CHECK(indexes_of(find_pure_nash(m)) == indexes_of(find_pure_nash(t)));
    CHECK(indexes_of(pareto_set(m)) == indexes_of(pareto_set(t)));
  }
}

TEST_CASE("matrix file parsing: duplicates, arity, line numbers") {
  std::string good =
      "III 3 3 3\nIIN 1 1 1\nINI 1 1 1\nINN 1 1 1\n"
      "NII 1 1 1\nNIN 1 1 1\nNNI 1 1 1\nNNN 0 0 0\n";
  PayoffMatrix3 m = PayoffMatrix3::parse(good);
  CHECK(m.at(StrategyProfile::parse("III")).labor == Rational(3));
  // round-trip through the printer
  CHECK(PayoffMatrix3::parse(m.str()).str() == m.str());

  CHECK_THROWS_AS(PayoffMatrix3::parse(""), DccError);
  CHECK_THROWS_AS(PayoffMatrix3::parse("III 1 2\n"), DccError);
  std::string dup = good + "III 9 9 9\n";
  CHECK_THROWS_AS(PayoffMatrix3::parse(dup), DccError);
  try {
    PayoffMatrix3::parse("III 1 1 1\nbogus-line 1 1\n");
  } catch (const DccError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  // comments and rationals
  std::string commented = "# payoffs\nIII 3/2 3 3\nIIN 1 1 1\nINI 1 1 1\nINN 1 1 1\n"
                          "NII 1 1 1\nNIN 1 1 1\nNNI 1 1 1\nNNN 0 0 0\n";
  CHECK(PayoffMatrix3::parse(commented).at(StrategyProfile::parse("III")).labor ==
        Rational(3, 2));
}

TEST_CASE("utility conditions over a grid") {
  UtilityGrid grid;
  grid.capital_axis = {Rational(0), Rational(1), Rational(2)};
  grid.labor_axis = {Rational(0), Rational(1)};
  grid.governance_axis = {Rational(0), Rational(1)};

  SUBCASE("constant utilities hold everywhere") {
    grid.utility = [](int, size_t, size_t, size_t) { return Rational(7); };
    CHECK(!check_utility_conditions(grid, 0, 0, 0).has_value());
  }
  SUBCASE("strictly increasing U_C with the star at the grid max holds") {
    grid.utility = [](int community, size_t ic, size_t il, size_t ig) {
      if (community == 0) return Rational(static_cast<std::int64_t>(ic));
      (void)il;
      (void)ig;
      return Rational(0);
    };
    CHECK(!check_utility_conditions(grid, 2, 0, 0).has_value());
    // and fails when starred anywhere lower
    auto violation = check_utility_conditions(grid, 1, 0, 0);
    REQUIRE(violation.has_value());
    CHECK(violation->community == 0);
    CHECK(violation->capital_index == 2);
  }
  SUBCASE("a single planted violating point is found and reported") {
    grid.utility = [](int community, size_t ic, size_t il, size_t ig) {
      if (community == 1 && ic == 2 && il == 1 && ig == 0) return Rational(5);
      return Rational(1);
    };
    auto violation = check_utility_conditions(grid, 0, 0, 0);
    REQUIRE(violation.has_value());
    CHECK(violation->community == 1);
    CHECK(violation->capital_index == 2);
    CHECK(violation->labor_index == 1);
    CHECK(violation->governance_index == 0);
  }
}

TEST_CASE("regulator: dead band, gains, clamps") {
  RegulatorConfig cfg;  // target 4/5, band 1/20, gains 1/10
  RegulatorState state;

  SUBCASE("inside the dead band nothing moves") {
    RegulatorState next = regulate(state, cfg, Rational(4, 5));
    CHECK(next.quota == state.quota);
    CHECK(next.incentive == state.incentive);
    next = regulate(state, cfg, Rational(77, 100));  // 0.77 within 0.75..0.85
    CHECK(next.quota == state.quota);
  }
  SUBCASE("low ratio shrinks the quota and raises the incentive") {
    RegulatorState next = regulate(state, cfg, Rational(1, 2));
    CHECK(next.quota == Rational(9, 10));
    CHECK(next.incentive == Rational(11, 10));
  }
  SUBCASE("high ratio applies the exact inverse, clamped") {
    RegulatorState lowered;
    lowered.quota = Rational(9, 10);
    lowered.incentive = Rational(11, 10);
    RegulatorState next = regulate(lowered, cfg, Rational(99, 100));
    CHECK(next.quota == Rational(1));
    CHECK(next.incentive == Rational(1));
    // quota never exceeds its bound
    next = regulate(next, cfg, Rational(99, 100));
    CHECK(next.quota == cfg.quota_max);
    CHECK(next.incentive == cfg.incentive_min);
  }
  SUBCASE("repeated lows approach the floor monotonically, never below") {
    RegulatorState s;
    Rational prev = s.quota;
    for (int i = 0; i < 80; ++i) {
      s = regulate(s, cfg, Rational(1, 10));
      CHECK(s.quota <= prev);
      CHECK(s.quota >= cfg.quota_min);
      prev = s.quota;
    }
    CHECK(s.quota - cfg.quota_min < Rational(1, 100));
  }
}

TEST_CASE("circulation metrics from event logs") {
  SUBCASE("no content in the window leaves the valid ratio at one") {
    World world;
    world.genesis(Json::object());
    world.open_account("a");
    world.open_account("b");
    world.mint_labor("a", 100, MintReason::ContentReward);
    world.convert_labor_to_capital("a", 50);
    world.transfer("a", "b", TokenKind::Capital, 10);
    CirculationMetrics m = compute_metrics(world.events(), 0, 0);
    CHECK(m.valid_ratio == Rational(1));
    CHECK(m.total_information == 0);
    CHECK(m.token_supply == 75);  // 50 L + 25 C
    // moved volume: conversion 50 + transfer 10 = 60
    CHECK(m.circulation_ratio == Rational(60, 75));
    CHECK(m.inflation_ratio == Rational(125, 75));
    CHECK_THROWS_AS(compute_metrics(world.events(), 3, 1), DccError);
  }
  SUBCASE("accepted and revoked counts form the valid ratio") {
    // 10 accepted, 2 revoked -> 0.8
    CirculationMetrics m;
    m.total_information = 10;
    m.invalid_information = 2;
    CHECK(Rational(m.total_information - m.invalid_information, m.total_information) ==
          Rational(4, 5));
  }
  SUBCASE("doubling every amount leaves supply-relative ratios unchanged") {
    auto build = [](Amount scale) {
      World world;
      world.genesis(Json::object());
      world.open_account("a");
      world.open_account("b");
      world.mint_labor("a", 100 * scale, MintReason::ContentReward);
      world.convert_labor_to_capital("a", 60 * scale);
      world.transfer("a", "b", TokenKind::Capital, 10 * scale);
      world.pay_gas("a", 5 * scale);
      return compute_metrics(world.events(), 0, 0);
    };
    CirculationMetrics m1 = build(1);
    CirculationMetrics m2 = build(2);
    CHECK(m2.token_supply == 2 * m1.token_supply);
    CHECK(m1.circulation_ratio == m2.circulation_ratio);
    CHECK(m1.inflation_ratio == m2.inflation_ratio);
  }
  SUBCASE("absorbed tokens track funding escrows at the window end") {
    World world;
    world.genesis(Json::object());
    for (const char* id : {"creator", "inv"}) world.open_account(id);
    world.mint_labor("inv", 200, MintReason::ContentReward);
    world.convert_labor_to_capital("inv", 200);
    const Event& ev = world.create_project("creator", 100, 3, Rational(1, 5),
                                           Rational(1, 2), {{Rational(1), Rational(0)}});
    std::string id = ev.payload.at("o").at("project");
    world.publish_contracts(id, "p", "r");
    world.invest(id, "inv", 40);
    CirculationMetrics m = compute_metrics(world.events(), 0, 0);
    CHECK(m.absorbed_tokens == 40);
  }
}
