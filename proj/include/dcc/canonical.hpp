#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dcc/rational.hpp"

namespace dcc {

// Streaming writer for canonical JSON: object keys in lexicographic order,
// no insignificant whitespace, integers base-10. Key ordering is the
// caller's responsibility; a debug check trips on out-of-order keys so the
// serialization tests catch mistakes.
class CanonicalWriter {
 public:
  explicit CanonicalWriter(std::string& out) : out_(out) {}

  void begin_object();
  void end_object();
  void begin_array();
  void end_array();

  void key(std::string_view name);

  void value_int(std::int64_t value);
  void value_uint(std::uint64_t value);
  void value_bool(bool value);
  void value_string(std::string_view value);
  void value_rational(const Rational& value) { value_string(value.str()); }
  void value_null();

  void kv(std::string_view name, std::int64_t value) { key(name); value_int(value); }
  void kv(std::string_view name, std::string_view value) { key(name); value_string(value); }
  void kv(std::string_view name, const Rational& value) { key(name); value_rational(value); }
  void kv_bool(std::string_view name, bool value) { key(name); value_bool(value); }

 private:
  void comma();

  struct Frame {
    bool is_object;
    bool first;
    std::string last_key;
  };

  std::string& out_;
  std::vector<Frame> stack_;
};

// JSON string escaping used by the canonical writer (escapes ", \ and
// control characters; UTF-8 passes through unchanged).
void append_json_escaped(std::string& out, std::string_view value);

}  // namespace dcc
