#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

namespace dcc {

// 256-bit digest, big-endian byte order: byte-wise comparison equals
// comparison of the digest as an unsigned 256-bit integer.
struct Digest256 {
  std::array<std::uint8_t, 32> bytes{};

  auto operator<=>(const Digest256&) const = default;
  std::string hex() const;
};

Digest256 sha256(std::string_view data);
std::string sha256_hex(std::string_view data);

// Domain-separated digest over fields: hashes the fields joined with an
// unambiguous length-prefixed framing, so no two field lists collide.
Digest256 digest_fields(std::initializer_list<std::string_view> fields);

}  // namespace dcc
