#include "dcc/effects.hpp"

namespace dcc {

std::string bal_bucket(const AccountId& account, TokenKind kind) {
  std::string out = "bal/";
  out += account;
  out += '/';
  out += kind_tag(kind);
  return out;
}

std::string esc_bucket(const std::string& escrow_id, TokenKind kind) {
  std::string out = "esc/";
  out += escrow_id;
  out += '/';
  out += kind_tag(kind);
  return out;
}

std::string pool_bucket(bool governance_pool) {
  return governance_pool ? "pool/gov_rw/L" : "pool/labor_rw/L";
}

std::string lock_bucket(const std::string& conversion_id) {
  return "lock/" + conversion_id + "/L";
}

std::string minted_bucket(TokenKind kind) {
  return std::string("minted/") + kind_tag(kind);
}

std::string burned_bucket(TokenKind kind) {
  return std::string("burned/") + kind_tag(kind);
}

std::string effects_imbalance(const Effects& effects) {
  Amount holdings[3] = {0, 0, 0};
  Amount minted[3] = {0, 0, 0};
  Amount burned[3] = {0, 0, 0};
  for (const Effect& e : effects) {
    if (e.bucket.empty()) return "empty bucket";
    char tag = e.bucket.back();
    int k = tag == 'C' ? 0 : tag == 'L' ? 1 : tag == 'G' ? 2 : -1;
    if (k < 0) return "bad bucket '" + e.bucket + "'";
    if (e.bucket.starts_with("minted/")) {
      minted[k] += e.delta;
    } else if (e.bucket.starts_with("burned/")) {
      burned[k] += e.delta;
    } else {
      holdings[k] += e.delta;
    }
  }
  for (int k = 0; k < 3; ++k) {
    if (holdings[k] != minted[k] - burned[k]) {
      std::string kind(to_string(static_cast<TokenKind>(k)));
      return "kind " + kind + ": holdings delta " + std::to_string(holdings[k]) +
             " != minted " + std::to_string(minted[k]) + " - burned " +
             std::to_string(burned[k]);
    }
  }
  return {};
}

}  // namespace dcc
