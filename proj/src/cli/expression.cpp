#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "besselsum/cli.hpp"

namespace besselsum::cli {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  double parse() {
    const double v = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    if (!std::isfinite(v)) fail("value is not finite");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  double expr() {
    double v = term();
    for (;;) {
      if (accept('+')) v += term();
      else if (accept('-')) v -= term();
      else return v;
    }
  }

  double term() {
    double v = unary();
    for (;;) {
      if (accept('*')) {
        v *= unary();
      } else if (accept('/')) {
        const double d = unary();
        if (d == 0.0) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  double unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return primary();
  }

  double primary() {
    skip();
    if (accept('(')) {
      const double v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (text_.substr(pos_, 2) == "pi") {
      pos_ += 2;
      return std::numbers::pi;
    }
    if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      const std::string rest(text_.substr(pos_));
      char* end = nullptr;
      const double v = std::strtod(rest.c_str(), &end);
      if (end == rest.c_str()) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - rest.c_str());
      return v;
    }
    fail(pos_ < text_.size() ? "unexpected character" : "unexpected end of input");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

double parse_expression(std::string_view text) { return Parser(text).parse(); }

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    out.push_back(parse_expression(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Range parse_range(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == text.npos ? text.npos : text.find(':', c1 + 1);
  if (c2 == text.npos) throw ParseError("range must be start:stop:count, got \"" + std::string(text) + "\"");
  Range r;
  r.start = parse_expression(text.substr(0, c1));
  r.stop = parse_expression(text.substr(c1 + 1, c2 - c1 - 1));
  const double count = parse_expression(text.substr(c2 + 1));
  if (count != std::floor(count) || count < 2 || count > 1e7) throw ParseError("range count must be an integer >= 2");
  if (r.start > r.stop) throw ParseError("range start must not exceed stop");
  r.count = static_cast<std::int64_t>(count);
  return r;
}

}  // namespace besselsum::cli
