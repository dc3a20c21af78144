#include "dcc/canonical.hpp"

#include <cassert>
#include <charconv>

namespace dcc {

void append_json_escaped(std::string& out, std::string_view value) {
  out.push_back('"');
  for (unsigned char c : value) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\b':
        out += "\\b";
        break;
      case '\f':
        out += "\\f";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (c < 0x20) {
          static constexpr char hex[] = "0123456789abcdef";
          out += "\\u00";
          out.push_back(hex[c >> 4]);
          out.push_back(hex[c & 0xf]);
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
  out.push_back('"');
}

void CanonicalWriter::comma() {
  if (!stack_.empty()) {
    if (stack_.back().first) {
      stack_.back().first = false;
    } else {
      out_.push_back(',');
    }
  }
}

void CanonicalWriter::begin_object() {
  comma();
  out_.push_back('{');
  stack_.push_back(Frame{true, true, {}});
}

void CanonicalWriter::end_object() {
  assert(!stack_.empty() && stack_.back().is_object);
  stack_.pop_back();
  out_.push_back('}');
}

void CanonicalWriter::begin_array() {
  comma();
  out_.push_back('[');
  stack_.push_back(Frame{false, true, {}});
}

void CanonicalWriter::end_array() {
  assert(!stack_.empty() && !stack_.back().is_object);
  stack_.pop_back();
  out_.push_back(']');
}

void CanonicalWriter::key(std::string_view name) {
  assert(!stack_.empty() && stack_.back().is_object);
  assert(stack_.back().first || stack_.back().last_key < name);
  comma();
  stack_.back().first = true;  // suppress comma before the value
  stack_.back().last_key.assign(name);
  append_json_escaped(out_, name);
  out_.push_back(':');
}

void CanonicalWriter::value_int(std::int64_t value) {
  comma();
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out_.append(buf, ptr);
}

void CanonicalWriter::value_uint(std::uint64_t value) {
  comma();
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out_.append(buf, ptr);
}

void CanonicalWriter::value_bool(bool value) {
  comma();
  out_ += value ? "true" : "false";
}

void CanonicalWriter::value_string(std::string_view value) {
  comma();
  append_json_escaped(out_, value);
}

void CanonicalWriter::value_null() {
  comma();
  out_ += "null";
}

}  // namespace dcc
