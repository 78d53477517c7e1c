#include "besselsum/json_writer.hpp"

#include <cmath>
#include <cstdio>

namespace besselsum::io {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string json_number(double v) { return std::isfinite(v) ? format_number(v) : "null"; }

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

JsonObject& JsonObject::add_raw(std::string_view key, std::string_view json) {
  fields_.push_back(quote(key) + ":" + std::string(json));
  return *this;
}

JsonObject& JsonObject::add(std::string_view key, double v) { return add_raw(key, json_number(v)); }

JsonObject& JsonObject::add(std::string_view key, std::int64_t v) {
  return add_raw(key, std::to_string(v));
}

JsonObject& JsonObject::add(std::string_view key, bool v) { return add_raw(key, v ? "true" : "false"); }

JsonObject& JsonObject::add(std::string_view key, std::string_view v) { return add_raw(key, quote(v)); }

JsonObject& JsonObject::add_null(std::string_view key) { return add_raw(key, "null"); }

std::string JsonObject::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (i) out += ",";
    out += fields_[i];
  }
  return out + "}";
}

std::string json_array(const std::vector<std::string>& raw_items) {
  std::string out = "[";
  for (std::size_t i = 0; i < raw_items.size(); ++i) {
    if (i) out += ",";
    out += raw_items[i];
  }
  return out + "]";
}

}  // namespace besselsum::io
