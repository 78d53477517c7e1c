#include <cmath>
#include <cstdlib>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "besselsum/cli.hpp"
#include "besselsum/json_writer.hpp"
#include "besselsum/quadrature.hpp"
#include "besselsum/spec_io.hpp"
#include "besselsum/summation.hpp"

namespace besselsum::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr const char* kHeader = "b,sum_value,quad_value,abs_diff,valid,class";

bool integrable(const BesselProductSpec& spec) {
  try {
    quadrature::require_integrable(spec);
    return true;
  } catch (const identity::InvalidSpec&) {
    return false;
  }
}

std::string meta_json(const SweepTable& t) {
  io::JsonObject o;
  o.add_raw("template", io::to_json(t.fixed_spec)).add("vary", t.vary);
  if (t.b_star) o.add("b_star", *t.b_star);
  else o.add_null("b_star");
  return o.add("terms", t.terms).add("t_max", t.t_max).str();
}

double parse_field(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw ParseError("sweep CSV: malformed number \"" + s + "\"");
  return v;
}

}  // namespace

SweepTable run_sweep(const BesselProductSpec& tmpl, std::size_t vary, const Range& range, std::int64_t terms,
                     double t_max) {
  if (vary >= tmpl.size()) throw ConfigError("--vary index out of range");
  if (!(range.start > 0.0)) throw ConfigError("swept scale must stay positive");
  if (range.count < 2) throw ConfigError("range count must be >= 2");
  if (terms < 0) throw ConfigError("--terms must be non-negative");

  SweepTable table{tmpl, vary, std::nullopt, terms, t_max, {}};
  const double others = tmpl.sum_scales() - tmpl.factors()[vary].a;
  if (identity::kTwoPi - others > 0.0) table.b_star = identity::kTwoPi - others;

  for (std::int64_t i = 0; i < range.count; ++i) {
    const double b = i == range.count - 1
                         ? range.stop
                         : range.start + (range.stop - range.start) * static_cast<double>(i) /
                                             static_cast<double>(range.count - 1);
    const auto spec = tmpl.with_scale(vary, b);
    const auto report = identity::check_validity(spec);
    const identity::Integrand f(spec);
    SweepRow row{b, kNaN, kNaN, kNaN, report.valid, identity::to_string(report.convergence_class)};
    if (f.zero_exponent() >= 0.0) row.sum_value = summation::sum_terms(f, terms).value;
    if (integrable(spec)) row.quad_value = quadrature::integrate(f, t_max).value;
    row.abs_diff = std::fabs(row.sum_value - row.quad_value);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string render_csv(const SweepTable& t) {
  std::string out = "# meta: " + meta_json(t) + "\n" + kHeader + "\n";
  for (const auto& r : t.rows) {
    out += io::format_number(r.b) + "," + io::format_number(r.sum_value) + "," + io::format_number(r.quad_value) +
           "," + io::format_number(r.abs_diff) + "," + (r.valid ? "true" : "false") + "," + r.cls + "\n";
  }
  return out;
}

std::string render_json(const SweepTable& t) {
  std::vector<std::string> rows;
  for (const auto& r : t.rows) {
    rows.push_back(io::JsonObject()
                       .add("b", r.b)
                       .add("sum_value", r.sum_value)
                       .add("quad_value", r.quad_value)
                       .add("abs_diff", r.abs_diff)
                       .add("valid", r.valid)
                       .add("class", r.cls)
                       .str());
  }
  return io::JsonObject().add_raw("meta", meta_json(t)).add_raw("rows", io::json_array(rows)).str() + "\n";
}

SweepTable parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  const std::string prefix = "# meta: ";
  if (!std::getline(in, line) || line.rfind(prefix, 0) != 0) throw ParseError("sweep CSV: missing meta line");
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(line.substr(prefix.size()));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("sweep CSV meta: ") + e.what());
  }
  SweepTable t{io::spec_from_json(meta.at("template").dump()), meta.at("vary").get<std::size_t>(), std::nullopt,
               meta.at("terms").get<std::int64_t>(), meta.at("t_max").get<double>(), {}};
  if (!meta.at("b_star").is_null()) t.b_star = meta.at("b_star").get<double>();
  if (!std::getline(in, line) || line != kHeader) throw ParseError("sweep CSV: unexpected header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 6) throw ParseError("sweep CSV: expected 6 columns");
    if (cells[4] != "true" && cells[4] != "false") throw ParseError("sweep CSV: malformed valid flag");
    t.rows.push_back({parse_field(cells[0]), parse_field(cells[1]), parse_field(cells[2]), parse_field(cells[3]),
                      cells[4] == "true", cells[5]});
  }
  return t;
}

}  // namespace besselsum::cli
