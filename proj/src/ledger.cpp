#include "dcc/ledger.hpp"

#include <algorithm>
#include <cstdio>

namespace dcc {

namespace {

std::string pad_id(const char* prefix, std::uint64_t n) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%08llu", static_cast<unsigned long long>(n));
  return std::string(prefix) + buf;
}

}  // namespace

thread_local std::array<std::uint64_t, 3>* Ledger::read_audit_ = nullptr;

Rational update_rate(const Rational& rate, const RatePolicy& policy,
                     const Rational& supply_signal, const Rational& demand_signal) {
  require(supply_signal > Rational(0), Errc::OutOfBounds, "supply signal must be positive");
  require(!demand_signal.is_negative(), Errc::OutOfBounds, "demand signal must be non-negative");
  Rational error = (supply_signal - demand_signal) / supply_signal;
  Rational next = rate * (Rational(1) + policy.kappa * error);
  next = clamp(next, policy.min_rate, policy.max_rate);
  // Bound denominator growth across epochs; 1e-6 grid.
  return next.quantize_floor(1000000);
}

Ledger::Account& Ledger::account_ref(const AccountId& id, Errc missing) {
  auto it = accounts_.find(id);
  require(it != accounts_.end(), missing, "account '" + id + "'");
  return it->second;
}

const Ledger::Account& Ledger::account_ref(const AccountId& id, Errc missing) const {
  auto it = accounts_.find(id);
  require(it != accounts_.end(), missing, "account '" + id + "'");
  return it->second;
}

void Ledger::open_account(const AccountId& id) {
  require(!id.empty(), Errc::ConfigInvalid, "account id must be nonempty");
  require(accounts_.find(id) == accounts_.end(), Errc::DuplicateAccount,
          "account '" + id + "'");
  accounts_.emplace(id, Account{});
}

Amount Ledger::balance(const AccountId& id, TokenKind kind) const {
  if (read_audit_) (*read_audit_)[static_cast<int>(kind)]++;
  return account_ref(id).bal[static_cast<int>(kind)];
}

std::vector<AccountId> Ledger::account_ids() const {
  std::vector<AccountId> out;
  out.reserve(accounts_.size());
  for (const auto& [id, acct] : accounts_) out.push_back(id);
  return out;
}

void Ledger::debit(Account& acct, const AccountId& id, TokenKind kind, Amount amount) {
  Amount& bal = acct.bal[static_cast<int>(kind)];
  require(bal >= amount, Errc::InsufficientBalance,
          id + " holds " + std::to_string(bal) + " " + std::string(to_string(kind)) +
              ", needs " + std::to_string(amount));
  bal -= amount;
}

void Ledger::mint_labor(const AccountId& account, Amount amount, MintReason reason,
                        Effects& fx) {
  require(amount > 0, Errc::ZeroAmount, "mint amount must be positive");
  Account& acct = account_ref(account);
  acct.bal[1] += amount;
  minted_[1] += amount;
  fx.push_back({bal_bucket(account, TokenKind::Labor), amount});
  fx.push_back({minted_bucket(TokenKind::Labor), amount});
  (void)reason;
}

Amount Ledger::convert_labor_to_capital(const AccountId& account, Amount labor_amount,
                                        const ExchangeRate& rate, Effects& fx) {
  require(labor_amount > 0, Errc::ZeroAmount, "conversion amount must be positive");
  Account& acct = account_ref(account);
  debit(acct, account, TokenKind::Labor, labor_amount);
  burned_[1] += labor_amount;
  // Rounding remainder value is burned with the Labor.
  Amount capital = floor_div(labor_amount, rate.labor_per_capital);
  acct.bal[0] += capital;
  minted_[0] += capital;
  fx.push_back({bal_bucket(account, TokenKind::Labor), -labor_amount});
  fx.push_back({burned_bucket(TokenKind::Labor), labor_amount});
  if (capital > 0) {
    fx.push_back({bal_bucket(account, TokenKind::Capital), capital});
    fx.push_back({minted_bucket(TokenKind::Capital), capital});
  }
  return capital;
}

const PendingConversion& Ledger::start_governance_conversion(
    const AccountId& account, Amount labor_amount, int phases, Epoch epoch,
    const Rational& governance_per_labor, Effects& fx) {
  require(labor_amount > 0, Errc::ZeroAmount, "conversion amount must be positive");
  require(phases >= 1, Errc::ZeroPhases, "phases must be >= 1");
  Account& acct = account_ref(account);
  debit(acct, account, TokenKind::Labor, labor_amount);

  PendingConversion conv;
  conv.id = pad_id("conv-", next_conversion_++);
  conv.account = account;
  conv.total_labor = labor_amount;
  conv.phases_total = phases;
  conv.per_phase = labor_amount / phases;
  conv.locked_remaining = labor_amount;
  conv.start_epoch = epoch;
  conv.governance_per_labor = governance_per_labor;

  fx.push_back({bal_bucket(account, TokenKind::Labor), -labor_amount});
  fx.push_back({lock_bucket(conv.id), labor_amount});
  auto [it, inserted] = pending_.emplace(conv.id, std::move(conv));
  return it->second;
}

Amount Ledger::advance_pending_conversions(Effects& fx) {
  Amount credited_total = 0;
  std::vector<std::string> done;
  for (auto& [id, conv] : pending_) {
    if (conv.phases_applied >= conv.phases_total) {
      done.push_back(id);
      continue;
    }
    const bool final_phase = conv.phases_applied + 1 == conv.phases_total;
    Amount labor_portion = final_phase ? conv.locked_remaining : conv.per_phase;
    conv.phases_applied++;
    conv.locked_remaining -= labor_portion;

    Amount governance = floor_mul(labor_portion, conv.governance_per_labor);
    Account& acct = account_ref(conv.account);
    acct.bal[2] += governance;
    burned_[1] += labor_portion;
    minted_[2] += governance;
    credited_total += governance;

    fx.push_back({lock_bucket(id), -labor_portion});
    fx.push_back({burned_bucket(TokenKind::Labor), labor_portion});
    if (governance > 0) {
      fx.push_back({bal_bucket(conv.account, TokenKind::Governance), governance});
      fx.push_back({minted_bucket(TokenKind::Governance), governance});
    }
    if (final_phase) done.push_back(id);
  }
  for (const std::string& id : done) pending_.erase(id);
  return credited_total;
}

Amount Ledger::convert_governance_to_labor(const AccountId& account, Amount amount,
                                           const Rational& governance_per_labor,
                                           Effects& fx) {
  require(amount > 0, Errc::ZeroAmount, "conversion amount must be positive");
  Account& acct = account_ref(account);
  debit(acct, account, TokenKind::Governance, amount);
  burned_[2] += amount;
  // Instant and full; credited at the inverse of the parameter in force.
  Amount labor = floor_div(amount, governance_per_labor);
  acct.bal[1] += labor;
  minted_[1] += labor;
  fx.push_back({bal_bucket(account, TokenKind::Governance), -amount});
  fx.push_back({burned_bucket(TokenKind::Governance), amount});
  if (labor > 0) {
    fx.push_back({bal_bucket(account, TokenKind::Labor), labor});
    fx.push_back({minted_bucket(TokenKind::Labor), labor});
  }
  return labor;
}

void Ledger::transfer(const AccountId& from, const AccountId& to, TokenKind kind,
                      Amount amount, Effects& fx) {
  require(kind == TokenKind::Capital, Errc::NonTransferableKind,
          std::string(to_string(kind)) + " tokens are not tradeable between users");
  require(amount > 0, Errc::ZeroAmount, "transfer amount must be positive");
  Account& src = account_ref(from);
  Account& dst = account_ref(to);
  debit(src, from, kind, amount);
  dst.bal[static_cast<int>(kind)] += amount;
  fx.push_back({bal_bucket(from, kind), -amount});
  fx.push_back({bal_bucket(to, kind), amount});
}

Amount Ledger::pay_gas(const AccountId& account, Amount capital_amount,
                       const ExchangeRate& rate, Effects& fx) {
  require(capital_amount > 0, Errc::ZeroAmount, "gas amount must be positive");
  Account& acct = account_ref(account);
  debit(acct, account, TokenKind::Capital, capital_amount);
  burned_[0] += capital_amount;
  Amount labor = floor_mul(capital_amount, rate.labor_per_capital);
  labor_reward_pool_ += labor;
  minted_[1] += labor;
  fx.push_back({bal_bucket(account, TokenKind::Capital), -capital_amount});
  fx.push_back({burned_bucket(TokenKind::Capital), capital_amount});
  if (labor > 0) {
    fx.push_back({pool_bucket(false), labor});
    fx.push_back({minted_bucket(TokenKind::Labor), labor});
  }
  return labor;
}

std::string Ledger::escrow_open(const AccountId& from, TokenKind kind, Amount amount,
                                const std::string& purpose, Effects& fx) {
  require(amount > 0, Errc::ZeroAmount, "escrow amount must be positive");
  Account& acct = account_ref(from);
  debit(acct, from, kind, amount);
  std::string id = pad_id("esc-", next_escrow_++);
  escrows_[id] = Escrow{kind, amount, purpose};
  fx.push_back({bal_bucket(from, kind), -amount});
  fx.push_back({esc_bucket(id, kind), amount});
  return id;
}

std::string Ledger::escrow_create(TokenKind kind, const std::string& purpose) {
  std::string id = pad_id("esc-", next_escrow_++);
  escrows_[id] = Escrow{kind, 0, purpose};
  return id;
}

void Ledger::escrow_add(const std::string& escrow_id, const AccountId& from,
                        Amount amount, Effects& fx) {
  require(amount > 0, Errc::ZeroAmount, "escrow amount must be positive");
  auto it = escrows_.find(escrow_id);
  require(it != escrows_.end(), Errc::UnknownEscrow, escrow_id);
  Account& acct = account_ref(from);
  debit(acct, from, it->second.kind, amount);
  it->second.amount += amount;
  fx.push_back({bal_bucket(from, it->second.kind), -amount});
  fx.push_back({esc_bucket(escrow_id, it->second.kind), amount});
}

void Ledger::escrow_release(const std::string& escrow_id, const AccountId& to,
                            Amount amount, Effects& fx) {
  if (amount == 0) return;
  auto it = escrows_.find(escrow_id);
  require(it != escrows_.end(), Errc::UnknownEscrow, escrow_id);
  require(it->second.amount >= amount, Errc::InsufficientBalance,
          "escrow " + escrow_id + " holds " + std::to_string(it->second.amount));
  Account& acct = account_ref(to);
  it->second.amount -= amount;
  acct.bal[static_cast<int>(it->second.kind)] += amount;
  fx.push_back({esc_bucket(escrow_id, it->second.kind), -amount});
  fx.push_back({bal_bucket(to, it->second.kind), amount});
  if (it->second.amount == 0) escrows_.erase(it);
}

void Ledger::escrow_burn(const std::string& escrow_id, Amount amount, Effects& fx) {
  if (amount == 0) return;
  auto it = escrows_.find(escrow_id);
  require(it != escrows_.end(), Errc::UnknownEscrow, escrow_id);
  require(it->second.amount >= amount, Errc::InsufficientBalance,
          "escrow " + escrow_id + " holds " + std::to_string(it->second.amount));
  it->second.amount -= amount;
  burned_[static_cast<int>(it->second.kind)] += amount;
  fx.push_back({esc_bucket(escrow_id, it->second.kind), -amount});
  fx.push_back({burned_bucket(it->second.kind), amount});
  if (it->second.amount == 0) escrows_.erase(it);
}

void Ledger::escrow_move(const std::string& from_id, const std::string& to_id,
                         Amount amount, Effects& fx) {
  if (amount == 0) return;
  auto from = escrows_.find(from_id);
  auto to = escrows_.find(to_id);
  require(from != escrows_.end(), Errc::UnknownEscrow, from_id);
  require(to != escrows_.end(), Errc::UnknownEscrow, to_id);
  require(from->second.kind == to->second.kind, Errc::UnknownEscrow, "kind mismatch");
  require(from->second.amount >= amount, Errc::InsufficientBalance, from_id);
  from->second.amount -= amount;
  to->second.amount += amount;
  fx.push_back({esc_bucket(from_id, from->second.kind), -amount});
  fx.push_back({esc_bucket(to_id, to->second.kind), amount});
  if (from->second.amount == 0) escrows_.erase(from);
}

const Escrow& Ledger::escrow(const std::string& escrow_id) const {
  auto it = escrows_.find(escrow_id);
  require(it != escrows_.end(), Errc::UnknownEscrow, escrow_id);
  return it->second;
}

Amount Ledger::burn_labor_clamped(const AccountId& account, Amount amount, Effects& fx) {
  Account& acct = account_ref(account);
  Amount burn = std::min(acct.bal[1], amount);
  if (burn == 0) return 0;
  acct.bal[1] -= burn;
  burned_[1] += burn;
  fx.push_back({bal_bucket(account, TokenKind::Labor), -burn});
  fx.push_back({burned_bucket(TokenKind::Labor), burn});
  return burn;
}

void Ledger::pool_pay(bool governance_pool, const AccountId& to, Amount amount,
                      Effects& fx) {
  if (amount == 0) return;
  Amount& pool = governance_pool ? governance_reward_pool_ : labor_reward_pool_;
  require(pool >= amount, Errc::InsufficientBalance, "reward pool underflow");
  Account& acct = account_ref(to);
  pool -= amount;
  acct.bal[1] += amount;
  fx.push_back({pool_bucket(governance_pool), -amount});
  fx.push_back({bal_bucket(to, TokenKind::Labor), amount});
}

void Ledger::pool_move_split(const Rational& labor_share, Amount& to_labor_side,
                             Amount& to_governance_side, Effects& fx) {
  Amount total = labor_reward_pool_;
  to_labor_side = floor_mul(total, labor_share);
  to_governance_side = total - to_labor_side;
  if (to_governance_side > 0) {
    labor_reward_pool_ -= to_governance_side;
    governance_reward_pool_ += to_governance_side;
    fx.push_back({pool_bucket(false), -to_governance_side});
    fx.push_back({pool_bucket(true), to_governance_side});
  }
}

std::string Ledger::conservation_violation() const {
  Amount holdings[3] = {0, 0, 0};
  for (const auto& [id, acct] : accounts_) {
    for (int k = 0; k < 3; ++k) {
      if (acct.bal[k] < 0) return "negative balance for " + id;
      holdings[k] += acct.bal[k];
    }
  }
  for (const auto& [id, esc] : escrows_) {
    if (esc.amount < 0) return "negative escrow " + id;
    holdings[static_cast<int>(esc.kind)] += esc.amount;
  }
  if (labor_reward_pool_ < 0 || governance_reward_pool_ < 0) return "negative pool";
  holdings[1] += labor_reward_pool_ + governance_reward_pool_;
  for (const auto& [id, conv] : pending_) {
    if (conv.locked_remaining < 0) return "negative lock " + id;
    holdings[1] += conv.locked_remaining;
  }
  for (int k = 0; k < 3; ++k) {
    if (minted_[k] - burned_[k] != holdings[k]) {
      return "kind " + std::string(to_string(static_cast<TokenKind>(k))) +
             ": minted " + std::to_string(minted_[k]) + " - burned " +
             std::to_string(burned_[k]) + " != holdings " + std::to_string(holdings[k]);
    }
  }
  return {};
}

void Ledger::write_canonical(CanonicalWriter& w) const {
  w.begin_object();
  w.key("accounts");
  w.begin_object();
  for (const auto& [id, acct] : accounts_) {
    w.key(id);
    w.begin_object();
    w.key("bal");
    w.begin_array();
    for (Amount b : acct.bal) w.value_int(b);
    w.end_array();
    w.kv_bool("kyc", acct.identity_verified);
    w.end_object();
  }
  w.end_object();
  w.key("burned");
  w.begin_array();
  for (Amount b : burned_) w.value_int(b);
  w.end_array();
  w.key("escrows");
  w.begin_object();
  for (const auto& [id, esc] : escrows_) {
    w.key(id);
    w.begin_object();
    w.kv("amount", esc.amount);
    w.key("kind");
    w.value_string(std::string_view(&"CLG"[static_cast<int>(esc.kind)], 1));
    w.kv("purpose", esc.purpose);
    w.end_object();
  }
  w.end_object();
  w.key("minted");
  w.begin_array();
  for (Amount m : minted_) w.value_int(m);
  w.end_array();
  w.key("next_conversion");
  w.value_uint(next_conversion_);
  w.key("next_escrow");
  w.value_uint(next_escrow_);
  w.key("pending");
  w.begin_object();
  for (const auto& [id, conv] : pending_) {
    w.key(id);
    w.begin_object();
    w.kv("account", conv.account);
    w.kv("gov_per_labor", conv.governance_per_labor);
    w.kv("locked", conv.locked_remaining);
    w.kv("per_phase", conv.per_phase);
    w.kv("phases_applied", static_cast<std::int64_t>(conv.phases_applied));
    w.kv("phases_total", static_cast<std::int64_t>(conv.phases_total));
    w.kv("start_epoch", conv.start_epoch);
    w.kv("total_labor", conv.total_labor);
    w.end_object();
  }
  w.end_object();
  w.key("pool_gov");
  w.value_int(governance_reward_pool_);
  w.key("pool_labor");
  w.value_int(labor_reward_pool_);
  w.end_object();
}

}  // namespace dcc
