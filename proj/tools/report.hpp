#pragma once

// Run reports are JSON documents with a canonical rendering: insertion key
// order, two-space indentation, 17-significant-digit doubles (lossless on
// round trip), and non-finite values spelled as the strings "inf", "-inf",
// and "nan". The DOM is nlohmann's order-preserving json; the emitter below
// pins the byte-level format so reports can be compared against golden files
// and re-serialized byte-identically after parsing.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include "json.hpp"

namespace report {

using json = nlohmann::ordered_json;

inline std::string format_double(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void append_quoted(const std::string& s, std::string& out) {
  out += '"';
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

inline void append_value(const json& v, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string inner(static_cast<std::size_t>(indent) + 2, ' ');
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        append_quoted(it.key(), out);
        out += ": ";
        append_value(it.value(), out, indent + 2);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        append_value(item, out, indent + 2);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::string:
      append_quoted(v.get<std::string>(), out);
      return;
    case json::value_t::boolean:
      out += v.get<bool>() ? "true" : "false";
      return;
    case json::value_t::number_integer:
      out += std::to_string(v.get<std::int64_t>());
      return;
    case json::value_t::number_unsigned:
      out += std::to_string(v.get<std::uint64_t>());
      return;
    case json::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    default:
      out += "null";
      return;
  }
}

inline std::string render(const json& document) {
  std::string out;
  append_value(document, out, 0);
  out += '\n';
  return out;
}

}  // namespace report
