#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dcc/canonical.hpp"
#include "dcc/rational.hpp"
#include "dcc/types.hpp"

namespace dcc {

// -- three-player, two-strategy game -----------------------------------------

enum class Strategy : int { Invest = 0, NotInvest = 1 };  // I / N

// Strategy profile in community order (Labor, Capital, Governance).
struct StrategyProfile {
  Strategy labor{Strategy::Invest};
  Strategy capital{Strategy::Invest};
  Strategy governance{Strategy::Invest};

  bool operator==(const StrategyProfile&) const = default;
  auto operator<=>(const StrategyProfile&) const = default;

  // 3-bit index, labor is the high bit; I=0, N=1.
  int index() const;
  static StrategyProfile from_index(int index);
  // "III", "INI", ...
  std::string label() const;
  static StrategyProfile parse(std::string_view label);
  StrategyProfile with_player(int player, Strategy s) const;
  Strategy player(int player) const;
};

struct PayoffTriple {
  Rational labor{0};
  Rational capital{0};
  Rational governance{0};

  bool operator==(const PayoffTriple&) const = default;
  const Rational& player(int player) const;
};

class PayoffMatrix3 {
 public:
  const PayoffTriple& at(const StrategyProfile& profile) const {
    return cells_[static_cast<size_t>(profile.index())];
  }
  PayoffTriple& at(const StrategyProfile& profile) {
    return cells_[static_cast<size_t>(profile.index())];
  }

  // Text form: 8 lines "<label> <u_L> <u_C> <u_G>", rationals as n or n/d.
  // Blank lines and '#' comments allowed. Every profile exactly once.
  static PayoffMatrix3 parse(std::string_view text);
  std::string str() const;

 private:
  std::array<PayoffTriple, 8> cells_{};
};

// A profitable unilateral deviation: at `profile`, `player` can switch to
// reach `deviation` and gain `gain` > 0.
struct DeviationWitness {
  StrategyProfile profile;
  int player{0};
  StrategyProfile deviation;
  Rational gain{0};
};

// Pure Nash profiles under weak (ties allowed) deviation inequalities.
std::vector<StrategyProfile> find_pure_nash(const PayoffMatrix3& matrix);

// For every non-equilibrium profile, one concrete violating deviation.
std::vector<DeviationWitness> deviation_witnesses(const PayoffMatrix3& matrix);

// True iff no other profile weakly improves all three payoffs with at least
// one strict improvement.
bool is_pareto_optimal(const StrategyProfile& profile, const PayoffMatrix3& matrix);
std::vector<StrategyProfile> pareto_set(const PayoffMatrix3& matrix);

// -- utility conditions over a finite allocation grid ------------------------

struct Allocation {
  Rational capital{0};
  Rational labor{0};
  Rational governance{0};
};

// Finite grid of allocations plus per-community utility functions.
struct UtilityGrid {
  std::vector<Rational> capital_axis;
  std::vector<Rational> labor_axis;
  std::vector<Rational> governance_axis;
  // utility(community, ic, il, ig); community 0=C, 1=L, 2=G
  std::function<Rational(int, size_t, size_t, size_t)> utility;
};

struct UtilityViolation {
  int community{0};  // 0=C, 1=L, 2=G
  size_t capital_index{0};
  size_t labor_index{0};
  size_t governance_index{0};
};

// Checks that each community's utility at the starred own-allocation is not
// exceeded anywhere on the grid when only that community's coordinate is
// re-pinned: U_i(x_i*, x_-i) >= U_i(x_i, x_-i) for all grid points. Returns
// the first violating grid point if any.
std::optional<UtilityViolation> check_utility_conditions(
    const UtilityGrid& grid, size_t star_capital, size_t star_labor,
    size_t star_governance);

// -- circulation metrics and the feedback regulator --------------------------

struct CirculationMetrics {
  Epoch window_start{0};
  Epoch window_end{0};
  Amount token_supply{0};           // sum over kinds of minted - burned, window end
  std::int64_t total_information{0};    // content records accepted in window
  std::int64_t invalid_information{0};  // content records revoked in window
  Rational valid_ratio{1, 1};
  Amount absorbed_tokens{0};  // Capital escrowed in Funding projects, window end
  Rational circulation_ratio{0, 1};  // moved volume per epoch / supply
  Rational inflation_ratio{0, 1};    // minted volume per epoch / supply
};

struct RegulatorConfig {
  Rational target_valid_ratio{4, 5};
  Rational dead_band{1, 20};
  Rational quota_gain{1, 10};      // g_q
  Rational incentive_gain{1, 10};  // g_s
  Rational quota_min{1, 10};
  Rational quota_max{1, 1};
  Rational incentive_min{1, 1};
  Rational incentive_max{5, 1};
  int metrics_window{5};
  int recovery_bound_epochs{40};
};

struct RegulatorState {
  Rational quota{1, 1};      // scales content rewards
  Rational incentive{1, 1};  // scales whistleblower rewards

  void write_canonical(CanonicalWriter& w) const;
};

// Outside the dead band: low valid_ratio shrinks the labor distribution
// quota and raises the supervision incentive; high valid_ratio applies the
// exact inverse. Both clamped to bounds.
RegulatorState regulate(const RegulatorState& state, const RegulatorConfig& cfg,
                        const Rational& valid_ratio);

}  // namespace dcc
