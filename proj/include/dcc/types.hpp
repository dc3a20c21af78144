#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dcc {

// All token amounts are integer minimal units. Conservation checks are exact.
using Amount = std::int64_t;
using AccountId = std::string;
using Epoch = std::int64_t;

enum class TokenKind : int { Capital = 0, Labor = 1, Governance = 2 };

inline constexpr std::array<TokenKind, 3> kAllTokenKinds{
    TokenKind::Capital, TokenKind::Labor, TokenKind::Governance};

std::string_view to_string(TokenKind kind);
// Single-letter bucket tag: C, L, G.
char kind_tag(TokenKind kind);
TokenKind token_kind_from_string(std::string_view name);

// Closed set of Labor mint paths. A new mint path requires a new variant here.
enum class MintReason : int {
  ContentReward = 0,
  TipOffReward = 1,
  TrancheConversion = 2,
  GasRecycle = 3,
  PoolDistribution = 4,
};

std::string_view to_string(MintReason reason);
MintReason mint_reason_from_string(std::string_view name);

enum class Errc : int {
  // ledger
  DuplicateAccount,
  UnknownAccount,
  ZeroAmount,
  InsufficientBalance,
  ZeroPhases,
  NonTransferableKind,
  UnknownEscrow,
  // crowdfunding
  BadTrancheSchedule,
  CreditTooLow,
  InvalidProportion,
  WrongState,
  PastDeadline,
  BeforeDeadline,
  NotAFunder,
  DuplicateVote,
  OutOfOrderTranche,
  ProjectSuspended,
  TargetExceeded,
  UnknownProject,
  // governance
  InsufficientGovernanceTokens,
  AlreadyInParty,
  NotAMember,
  NoEligibleParties,
  EmptyParty,
  RoleCountMismatch,
  NotChief,
  OutOfBounds,
  NotSenatorial,
  QuorumNotMet,
  UnknownParty,
  NoAssembly,
  // supervision
  IntervalOpen,
  DuplicateRating,
  NotArbitral,
  UnknownTipOff,
  UnknownContent,
  UnknownInterval,
  // econ / io
  EmptyWindow,
  ConfigInvalid,
  IoFailure,
  CorruptLog,
  ParseError,
  UnknownKind,
  UnknownOp,
  Overflow,
};

std::string_view to_string(Errc code);

class DccError : public std::runtime_error {
 public:
  DccError(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw DccError(code, message);
}

inline void require(bool condition, Errc code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace dcc
