#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dcc/canonical.hpp"
#include "dcc/effects.hpp"
#include "dcc/rational.hpp"
#include "dcc/types.hpp"

namespace dcc {

// Exchange rate between Labor and Capital plus the gold-peg band for
// Capital's external value index. labor_per_capital > 0 always. The peg has
// no active stabilization mechanics: an external index outside the band
// raises a peg-violation flag on the update event.
struct ExchangeRate {
  Rational labor_per_capital{2, 1};
  Rational gold_band_lower{9, 10};
  Rational gold_band_upper{11, 10};
};

// Negative-feedback law parameters for update_rate.
struct RatePolicy {
  Rational kappa{1, 2};        // gain, in (0, 1]
  Rational min_rate{1, 100};   // clamp bounds
  Rational max_rate{100, 1};
};

// rate' = rate * (1 + kappa * (supply - demand) / supply), clamped.
Rational update_rate(const Rational& rate, const RatePolicy& policy,
                     const Rational& supply_signal, const Rational& demand_signal);

// A delayed, phased Labor -> Governance conversion. Equal per-phase portions
// (floor), remainder applied in the final phase. The Labor:Governance
// parameter is frozen at conversion start.
struct PendingConversion {
  std::string id;
  AccountId account;
  Amount total_labor{0};
  int phases_total{1};
  int phases_applied{0};
  Amount per_phase{0};
  Amount locked_remaining{0};
  Epoch start_epoch{0};
  Rational governance_per_labor{1, 1};
};

struct Escrow {
  TokenKind kind{TokenKind::Capital};
  Amount amount{0};
  std::string purpose;
};

// All token state. Single-writer: mutating calls apply sequentially; copies
// and const reads are safe to share.
class Ledger {
 public:
  // -- accounts ------------------------------------------------------------
  void open_account(const AccountId& id);
  bool has_account(const AccountId& id) const { return accounts_.count(id) != 0; }
  Amount balance(const AccountId& id, TokenKind kind) const;
  std::vector<AccountId> account_ids() const;

  // -- mint / conversions ----------------------------------------------------
  void mint_labor(const AccountId& account, Amount amount, MintReason reason,
                  Effects& fx);
  Amount convert_labor_to_capital(const AccountId& account, Amount labor_amount,
                                  const ExchangeRate& rate, Effects& fx);
  const PendingConversion& start_governance_conversion(
      const AccountId& account, Amount labor_amount, int phases, Epoch epoch,
      const Rational& governance_per_labor, Effects& fx);
  // Applies one phase to every pending conversion; completed ones removed.
  // Returns Governance credited in total.
  Amount advance_pending_conversions(Effects& fx);
  Amount convert_governance_to_labor(const AccountId& account, Amount amount,
                                     const Rational& governance_per_labor, Effects& fx);

  // -- transfers / gas -------------------------------------------------------
  void transfer(const AccountId& from, const AccountId& to, TokenKind kind,
                Amount amount, Effects& fx);
  Amount pay_gas(const AccountId& account, Amount capital_amount,
                 const ExchangeRate& rate, Effects& fx);

  // -- escrow primitives (used by crowdfunding and supervision) -------------
  std::string escrow_open(const AccountId& from, TokenKind kind, Amount amount,
                          const std::string& purpose, Effects& fx);
  // Creates an empty escrow (no token movement); fund it with escrow_move.
  std::string escrow_create(TokenKind kind, const std::string& purpose);
  void escrow_add(const std::string& escrow_id, const AccountId& from,
                  Amount amount, Effects& fx);
  void escrow_release(const std::string& escrow_id, const AccountId& to,
                      Amount amount, Effects& fx);
  void escrow_burn(const std::string& escrow_id, Amount amount, Effects& fx);
  // Moves between escrows of the same kind.
  void escrow_move(const std::string& from_id, const std::string& to_id,
                   Amount amount, Effects& fx);
  const Escrow& escrow(const std::string& escrow_id) const;
  bool has_escrow(const std::string& escrow_id) const { return escrows_.count(escrow_id) != 0; }

  // -- reward pools ----------------------------------------------------------
  Amount labor_reward_pool() const { return labor_reward_pool_; }
  Amount governance_reward_pool() const { return governance_reward_pool_; }
  // Burn Labor from a balance (supervision clawbacks). Returns burned amount
  // (clamped at the current balance).
  Amount burn_labor_clamped(const AccountId& account, Amount amount, Effects& fx);
  void pool_pay(bool governance_pool, const AccountId& to, Amount amount, Effects& fx);
  void pool_move_split(const Rational& labor_share, Amount& to_labor_side,
                       Amount& to_governance_side, Effects& fx);

  Amount minted(TokenKind kind) const { return minted_[static_cast<int>(kind)]; }
  Amount burned(TokenKind kind) const { return burned_[static_cast<int>(kind)]; }
  const std::map<std::string, PendingConversion>& pending_conversions() const {
    return pending_;
  }
  const std::map<std::string, Escrow>& escrows() const { return escrows_; }

  // Full conservation audit: minted - burned == balances + escrows + pools +
  // locks, per kind; nothing negative. Empty string when clean.
  std::string conservation_violation() const;

  void write_canonical(CanonicalWriter& w) const;

  // Test hook: counts balance reads per token kind while enabled (used to
  // prove elections never read Capital).
  static void set_read_audit(std::array<std::uint64_t, 3>* counters) {
    read_audit_ = counters;
  }

 private:
  struct Account {
    std::array<Amount, 3> bal{0, 0, 0};
    bool identity_verified{true};  // simulated identity registry
  };

  Account& account_ref(const AccountId& id, Errc missing = Errc::UnknownAccount);
  const Account& account_ref(const AccountId& id, Errc missing = Errc::UnknownAccount) const;
  void debit(Account& acct, const AccountId& id, TokenKind kind, Amount amount);

  std::map<AccountId, Account> accounts_;
  std::map<std::string, Escrow> escrows_;
  std::map<std::string, PendingConversion> pending_;
  Amount labor_reward_pool_{0};
  Amount governance_reward_pool_{0};
  std::array<Amount, 3> minted_{0, 0, 0};
  std::array<Amount, 3> burned_{0, 0, 0};
  std::uint64_t next_escrow_{0};
  std::uint64_t next_conversion_{0};

  static thread_local std::array<std::uint64_t, 3>* read_audit_;
};

}  // namespace dcc
