#pragma once

// Command-line surface: compute | validate | sweep | compare.
//
// Exit codes: 0 success, 1 parse or configuration error, 2 invalid spec,
// unreachable tolerance or failed comparison, 3 I/O error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "besselsum/identity.hpp"

namespace besselsum::cli {

enum ExitCode : int { kOk = 0, kParseError = 1, kInvalid = 2, kIoError = 3 };

/// Arithmetic over reals with + - * / parentheses, unary minus and `pi`.
/// Throws ParseError naming the offending position.
double parse_expression(std::string_view text);

/// Comma-separated expressions; at least one entry.
std::vector<double> parse_list(std::string_view text);

struct Range {
  double start;
  double stop;
  std::int64_t count;
};

/// "start:stop:count" with start <= stop and count >= 2.
Range parse_range(std::string_view text);

struct SweepRow {
  double b;
  double sum_value;
  double quad_value;
  double abs_diff;
  bool valid;
  std::string cls;
};

struct SweepTable {
  BesselProductSpec fixed_spec;
  std::size_t vary;
  /// The b at which sum a_j = 2pi, when positive.
  std::optional<double> b_star;
  std::int64_t terms;
  double t_max;
  std::vector<SweepRow> rows;
};

/// One row per b: plain `terms`-term partial sum and quadrature to t_max of
/// the spec with factor `vary` set to b. Rows outside the domain of either
/// side carry NaN.
SweepTable run_sweep(const BesselProductSpec& tmpl, std::size_t vary, const Range& range, std::int64_t terms,
                     double t_max);

std::string render_csv(const SweepTable& table);
std::string render_json(const SweepTable& table);

/// Inverse of render_csv; values round-trip bitwise.
SweepTable parse_csv(std::string_view text);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace besselsum::cli
