#include "dcc/types.hpp"

namespace dcc {

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Capital:
      return "Capital";
    case TokenKind::Labor:
      return "Labor";
    case TokenKind::Governance:
      return "Governance";
  }
  return "?";
}

char kind_tag(TokenKind kind) {
  switch (kind) {
    case TokenKind::Capital:
      return 'C';
    case TokenKind::Labor:
      return 'L';
    case TokenKind::Governance:
      return 'G';
  }
  return '?';
}

TokenKind token_kind_from_string(std::string_view name) {
  if (name == "Capital" || name == "C") return TokenKind::Capital;
  if (name == "Labor" || name == "L") return TokenKind::Labor;
  if (name == "Governance" || name == "G") return TokenKind::Governance;
  fail(Errc::ParseError, "unknown token kind '" + std::string(name) + "'");
}

std::string_view to_string(MintReason reason) {
  switch (reason) {
    case MintReason::ContentReward:
      return "ContentReward";
    case MintReason::TipOffReward:
      return "TipOffReward";
    case MintReason::TrancheConversion:
      return "TrancheConversion";
    case MintReason::GasRecycle:
      return "GasRecycle";
    case MintReason::PoolDistribution:
      return "PoolDistribution";
  }
  return "?";
}

MintReason mint_reason_from_string(std::string_view name) {
  if (name == "ContentReward") return MintReason::ContentReward;
  if (name == "TipOffReward") return MintReason::TipOffReward;
  if (name == "TrancheConversion") return MintReason::TrancheConversion;
  if (name == "GasRecycle") return MintReason::GasRecycle;
  if (name == "PoolDistribution") return MintReason::PoolDistribution;
  fail(Errc::ParseError, "unknown mint reason '" + std::string(name) + "'");
}

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DuplicateAccount: return "DuplicateAccount";
    case Errc::UnknownAccount: return "UnknownAccount";
    case Errc::ZeroAmount: return "ZeroAmount";
    case Errc::InsufficientBalance: return "InsufficientBalance";
    case Errc::ZeroPhases: return "ZeroPhases";
    case Errc::NonTransferableKind: return "NonTransferableKind";
    case Errc::UnknownEscrow: return "UnknownEscrow";
    case Errc::BadTrancheSchedule: return "BadTrancheSchedule";
    case Errc::CreditTooLow: return "CreditTooLow";
    case Errc::InvalidProportion: return "InvalidProportion";
    case Errc::WrongState: return "WrongState";
    case Errc::PastDeadline: return "PastDeadline";
    case Errc::BeforeDeadline: return "BeforeDeadline";
    case Errc::NotAFunder: return "NotAFunder";
    case Errc::DuplicateVote: return "DuplicateVote";
    case Errc::OutOfOrderTranche: return "OutOfOrderTranche";
    case Errc::ProjectSuspended: return "ProjectSuspended";
    case Errc::TargetExceeded: return "TargetExceeded";
    case Errc::UnknownProject: return "UnknownProject";
    case Errc::InsufficientGovernanceTokens: return "InsufficientGovernanceTokens";
    case Errc::AlreadyInParty: return "AlreadyInParty";
    case Errc::NotAMember: return "NotAMember";
    case Errc::NoEligibleParties: return "NoEligibleParties";
    case Errc::EmptyParty: return "EmptyParty";
    case Errc::RoleCountMismatch: return "RoleCountMismatch";
    case Errc::NotChief: return "NotChief";
    case Errc::OutOfBounds: return "OutOfBounds";
    case Errc::NotSenatorial: return "NotSenatorial";
    case Errc::QuorumNotMet: return "QuorumNotMet";
    case Errc::UnknownParty: return "UnknownParty";
    case Errc::NoAssembly: return "NoAssembly";
    case Errc::IntervalOpen: return "IntervalOpen";
    case Errc::DuplicateRating: return "DuplicateRating";
    case Errc::NotArbitral: return "NotArbitral";
    case Errc::UnknownTipOff: return "UnknownTipOff";
    case Errc::UnknownContent: return "UnknownContent";
    case Errc::UnknownInterval: return "UnknownInterval";
    case Errc::EmptyWindow: return "EmptyWindow";
    case Errc::ConfigInvalid: return "ConfigInvalid";
    case Errc::IoFailure: return "IoFailure";
    case Errc::CorruptLog: return "CorruptLog";
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownKind: return "UnknownKind";
    case Errc::UnknownOp: return "UnknownOp";
    case Errc::Overflow: return "Overflow";
  }
  return "?";
}

}  // namespace dcc
