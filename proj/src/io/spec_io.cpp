#include "besselsum/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "besselsum/json_writer.hpp"

namespace besselsum::io {

namespace {

nlohmann::json parse_object(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("spec JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("spec JSON: expected an object");
  if (!j.contains("factors") || !j["factors"].is_array()) throw ParseError("spec JSON: missing \"factors\" array");
  return j;
}

double number_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw ParseError(std::string("spec JSON: missing numeric field \"") + key + "\"");
  }
  return j[key].get<double>();
}

}  // namespace

std::string to_json(const BesselProductSpec& spec) {
  std::vector<std::string> factors;
  for (const auto& f : spec.factors()) {
    factors.push_back(JsonObject().add("nu", f.nu.value()).add("a", f.a).str());
  }
  return JsonObject().add("k", spec.k()).add_raw("factors", json_array(factors)).str();
}

std::string to_json(const identity::ValidityReport& report) {
  std::vector<std::string> rules;
  for (const auto& r : report.triggered_rules) {
    rules.push_back(JsonObject().add("id", r.id).add("satisfied", r.satisfied).add("text", r.text).str());
  }
  std::vector<std::string> neg;
  for (auto j : report.negative_integer_set) neg.push_back(std::to_string(j));
  JsonObject o;
  o.add("valid", report.valid)
      .add("class", identity::to_string(report.convergence_class))
      .add("needs_rescale", report.needs_rescale);
  if (report.beat_witness) {
    std::vector<std::string> s;
    for (int x : *report.beat_witness) s.push_back(std::to_string(x));
    o.add_raw("beat_witness", json_array(s));
  } else {
    o.add_null("beat_witness");
  }
  o.add_raw("negative_integer_set", json_array(neg)).add_raw("triggered_rules", json_array(rules));
  return o.str();
}

RawSpec raw_spec_from_json(std::string_view text) {
  const auto j = parse_object(text);
  RawSpec raw{number_field(j, "k"), {}};
  if (!std::isfinite(raw.k)) throw ParseError("spec JSON: \"k\" must be finite");
  for (const auto& f : j["factors"]) {
    if (!f.is_object()) throw ParseError("spec JSON: factors must be objects");
    const double nu = number_field(f, "nu");
    const double a = number_field(f, "a");
    if (!std::isfinite(nu)) throw ParseError("spec JSON: \"nu\" must be finite");
    raw.factors.push_back({specfun::Order(nu), a});
  }
  return raw;
}

BesselProductSpec spec_from_json(std::string_view text) {
  auto raw = raw_spec_from_json(text);
  if (raw.k != std::floor(raw.k)) throw ParseError("spec JSON: \"k\" must be an integer");
  return BesselProductSpec(static_cast<std::int64_t>(raw.k), std::move(raw.factors));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BesselProductSpec read_spec_file(const std::string& path) { return spec_from_json(read_text_file(path)); }

}  // namespace besselsum::io
