#pragma once

// Deterministic JSON emission: keys keep insertion order and every real is
// printed with 17 significant digits in scientific notation.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace besselsum::io {

/// "%.16e"; non-finite values render as nan, inf or -inf.
std::string format_number(double v);

std::string quote(std::string_view s);

class JsonObject {
 public:
  JsonObject& add(std::string_view key, double v);
  JsonObject& add(std::string_view key, std::int64_t v);
  JsonObject& add(std::string_view key, int v) { return add(key, static_cast<std::int64_t>(v)); }
  JsonObject& add(std::string_view key, std::size_t v) { return add(key, static_cast<std::int64_t>(v)); }
  JsonObject& add(std::string_view key, bool v);
  JsonObject& add(std::string_view key, const char* v) { return add(key, std::string_view(v)); }
  JsonObject& add(std::string_view key, std::string_view v);
  JsonObject& add(std::string_view key, const std::string& v) { return add(key, std::string_view(v)); }
  JsonObject& add_null(std::string_view key);
  /// `json` is inserted verbatim.
  JsonObject& add_raw(std::string_view key, std::string_view json);

  std::string str() const;

 private:
  std::vector<std::string> fields_;
};

/// Non-finite reals become null.
std::string json_number(double v);
std::string json_array(const std::vector<std::string>& raw_items);

}  // namespace besselsum::io
