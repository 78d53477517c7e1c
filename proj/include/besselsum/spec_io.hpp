#pragma once

// JSON interchange for specs and validity reports:
//   {"k": int, "factors": [{"nu": float, "a": float}, ...]}

#include <string>
#include <string_view>
#include <vector>

#include "besselsum/identity.hpp"

namespace besselsum::io {

std::string to_json(const BesselProductSpec& spec);
std::string to_json(const identity::ValidityReport& report);

/// Throws ParseError on malformed input.
BesselProductSpec spec_from_json(std::string_view text);

/// Reads the spec from a file; IoError when it cannot be read.
BesselProductSpec read_spec_file(const std::string& path);

/// Spec JSON without the integer-k requirement (odd-parity checks use a
/// half-integer k).
struct RawSpec {
  double k;
  std::vector<Factor> factors;
};
RawSpec raw_spec_from_json(std::string_view text);

/// IoError when the file cannot be read.
std::string read_text_file(const std::string& path);

}  // namespace besselsum::io
