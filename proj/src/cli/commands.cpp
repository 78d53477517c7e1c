#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <ostream>

#include "besselsum/cli.hpp"
#include "besselsum/json_writer.hpp"
#include "besselsum/quadrature.hpp"
#include "besselsum/spec_io.hpp"
#include "besselsum/summation.hpp"

namespace besselsum::cli {

namespace {

struct SpecFlags {
  std::string nu;
  std::string a;
  std::string k = "0";
  std::string spec_path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--nu", nu, "Bessel orders, comma separated (pi expressions allowed)");
    cmd->add_option("--a", a, "Argument scales, comma separated");
    cmd->add_option("--k", k, "Power parameter k")->capture_default_str();
    cmd->add_option("--spec", spec_path, "Spec JSON file");
  }

  // k may be a half-integer only when allow_half is set.
  identity::Integrand load(bool allow_half, double& k_out) const {
    std::vector<Factor> factors;
    if (!spec_path.empty()) {
      if (!nu.empty() || !a.empty()) throw ParseError("--spec: cannot be combined with --nu/--a");
      auto raw = io::raw_spec_from_json(io::read_text_file(spec_path));
      k_out = raw.k;
      factors = std::move(raw.factors);
    } else {
      if (nu.empty()) throw ParseError("--nu: required (or give --spec)");
      if (a.empty()) throw ParseError("--a: required (or give --spec)");
      std::vector<double> nus, as;
      try {
        nus = parse_list(nu);
      } catch (const ParseError& e) {
        throw ParseError(std::string("--nu: ") + e.what());
      }
      try {
        as = parse_list(a);
      } catch (const ParseError& e) {
        throw ParseError(std::string("--a: ") + e.what());
      }
      if (nus.size() != as.size()) throw ParseError("--nu/--a: lists must have equal length");
      try {
        k_out = parse_expression(k);
      } catch (const ParseError& e) {
        throw ParseError(std::string("--k: ") + e.what());
      }
      for (std::size_t j = 0; j < nus.size(); ++j) factors.push_back({specfun::Order(nus[j]), as[j]});
    }
    const bool integer = k_out == std::floor(k_out);
    const bool half = 2.0 * k_out == std::floor(2.0 * k_out);
    if (!integer && !(allow_half && half)) {
      throw ParseError(allow_half ? "--k: must be an integer or half-integer" : "--k: must be an integer");
    }
    if (std::fabs(k_out) > 1e6) throw ParseError("--k: out of range");
    return identity::Integrand(2.0 * k_out, std::move(factors));
  }

  BesselProductSpec spec() const {
    double k = 0.0;
    auto f = load(false, k);
    return BesselProductSpec(static_cast<std::int64_t>(k), f.factors());
  }
};

std::string text_report(const identity::ValidityReport& r) {
  std::string out = std::string("valid: ") + (r.valid ? "true" : "false") + "\n";
  out += std::string("class: ") + identity::to_string(r.convergence_class) + "\n";
  out += std::string("needs_rescale: ") + (r.needs_rescale ? "true" : "false") + "\n";
  out += "beat_witness:";
  if (r.beat_witness) {
    for (int s : *r.beat_witness) out += s > 0 ? " +1" : " -1";
  } else {
    out += " none";
  }
  out += "\nnegative_integer_set:";
  if (r.negative_integer_set.empty()) out += " none";
  for (auto j : r.negative_integer_set) out += " " + std::to_string(j);
  out += "\nrules:\n";
  for (const auto& rule : r.triggered_rules) {
    out += "  [" + rule.id + "] " + (rule.satisfied ? "ok   " : "FAIL ") + rule.text + "\n";
  }
  return out;
}

double flag_value(const char* flag, const std::string& text) {
  try {
    return parse_expression(text);
  } catch (const ParseError& e) {
    throw ParseError(std::string(flag) + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << content;
  f.flush();
  if (!f) throw IoError("failed writing " + path);
}

void check_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (auto* a : allowed) {
    if (format == a) return;
  }
  throw ParseError("--format: unsupported value \"" + format + "\"");
}

int cmd_compute(const SpecFlags& sf, std::int64_t terms, const std::string& tol, std::int64_t max_terms,
                bool no_accel, const std::string& format, std::ostream& out) {
  check_format(format, {"json", "text"});
  const auto spec = sf.spec();
  summation::Target target = summation::FixedTerms{terms};
  if (!tol.empty()) {
    const double t = flag_value("--tol", tol);
    if (!(t > 0.0)) throw ParseError("--tol: must be positive");
    target = summation::Tolerance{t, max_terms};
  }
  const auto r = summation::evaluate(spec, target, {!no_accel});
  if (format == "json") {
    out << summation::to_json(r) << "\n";
  } else {
    out << "value = " << io::format_number(r.value) << "\n"
        << "terms_used = " << r.terms_used << "\n"
        << "error_bound = " << io::format_number(r.error_bound) << "\n"
        << "class = " << identity::to_string(r.convergence_class) << "\n"
        << "accelerated = " << (r.accelerated ? "true" : "false") << "\n"
        << "rescaled = " << (r.rescaled ? "true" : "false") << "\n"
        << "A = " << io::format_number(r.rescale_A) << "\n";
  }
  return kOk;
}

int cmd_validate(const SpecFlags& sf, const std::string& format, std::ostream& out) {
  check_format(format, {"json", "text"});
  const auto report = identity::check_validity(sf.spec());
  out << (format == "json" ? io::to_json(report) + "\n" : text_report(report));
  return report.valid ? kOk : kInvalid;
}

int cmd_sweep(const SpecFlags& sf, long vary, const std::string& range, std::int64_t terms, const std::string& t_max,
              const std::string& out_path, const std::string& format, std::ostream& out) {
  check_format(format, {"csv", "json"});
  const auto spec = sf.spec();
  if (range.empty()) throw ParseError("--range: required");
  Range r;
  try {
    r = parse_range(range);
  } catch (const ParseError& e) {
    throw ParseError(std::string("--range: ") + e.what());
  }
  const double T = flag_value("--t-max", t_max);
  if (!(T > 0.0)) throw ParseError("--t-max: must be positive");
  const std::size_t idx = vary < 0 ? spec.size() - 1 : static_cast<std::size_t>(vary);
  if (idx >= spec.size()) throw ParseError("--vary: index out of range");
  const auto table = run_sweep(spec, idx, r, terms, T);
  const std::string text = format == "csv" ? render_csv(table) : render_json(table);
  if (out_path.empty()) out << text;
  else write_file(out_path, text);
  return kOk;
}

int cmd_compare(const SpecFlags& sf, std::int64_t terms, const std::string& t_max, bool no_accel,
                const std::string& format, std::ostream& out) {
  check_format(format, {"json", "text"});
  double k = 0.0;
  const auto f = sf.load(true, k);
  const double T = flag_value("--t-max", t_max);
  if (!(T > 0.0)) throw ParseError("--t-max: must be positive");
  if (terms < 0) throw ParseError("--terms: must be non-negative");
  const bool odd = k != std::floor(k);
  const bool damped = f.sum_scales() < identity::kTwoPi;

  io::JsonObject o;
  double sum = 0.0, sum_bound = 0.0;
  std::string direct = "n/a";
  std::string cls;
  if (odd) {
    if (f.zero_exponent() < 0.0) {
      identity::ValidityReport report;
      report.triggered_rules.push_back({"R1", false, "integrand diverges at t = 0"});
      throw identity::InvalidSpec(std::move(report));
    }
    const auto s = summation::sum_terms(f, terms);
    cls = f.decay_exponent() > 1.0 ? "absolute" : "conditional";
    sum = s.value;
    sum_bound = summation::bound_formula(
        f, f.decay_exponent() > 1.0 ? identity::ConvergenceClass::Absolute : identity::ConvergenceClass::Conditional,
        terms);
  } else {
    const BesselProductSpec spec(static_cast<std::int64_t>(k), f.factors());
    const auto report = identity::check_validity(spec);
    direct = report.valid ? "valid" : "invalid";
    const auto r = summation::evaluate(spec, summation::FixedTerms{terms}, {!no_accel});
    sum = r.value;
    sum_bound = r.error_bound;
    cls = identity::to_string(r.convergence_class);
    o.add("rescaled", r.rescaled).add("A", r.rescale_A);
    quadrature::require_integrable(spec);
  }
  const auto q = quadrature::integrate(f, T);
  const double correction = damped ? quadrature::correction_term(f) : NAN;
  const double leakage = damped ? quadrature::band_limit_check(f, 4096, quadrature::default_sample_step(f)) : NAN;
  const double bound = sum_bound + q.error_estimate;
  const double diff = odd ? sum - q.value - correction : sum - q.value;
  const bool within = std::fabs(diff) <= bound;
  const std::string verdict = odd ? "not-applicable" : (within ? "PASS" : "FAIL");

  o.add("direct_validity", direct)
      .add("class", cls)
      .add("sum_value", sum)
      .add("sum_bound", sum_bound)
      .add("quad_value", q.value)
      .add("quad_error", q.error_estimate)
      .add("correction_term", correction)
      .add("leakage", leakage)
      .add(odd ? "abel_plana_residual" : "abs_diff", odd ? diff : std::fabs(diff))
      .add("combined_bound", bound)
      .add("within_bounds", within)
      .add("identity_check", verdict);
  if (format == "json") {
    out << o.str() << "\n";
  } else {
    out << "direct validity = " << direct << "\n"
        << "class           = " << cls << "\n"
        << "sum             = " << io::format_number(sum) << "  (bound " << io::format_number(sum_bound) << ")\n"
        << "quadrature      = " << io::format_number(q.value) << "  (error " << io::format_number(q.error_estimate)
        << ")\n"
        << "correction term = " << (damped ? io::format_number(correction) : "n/a (sum a >= 2pi)") << "\n"
        << "leakage         = " << (damped ? io::format_number(leakage) : "n/a (sum a >= 2pi)") << "\n"
        << (odd ? "sum - quad - correction = " : "|sum - quad|     = ") << io::format_number(odd ? diff : std::fabs(diff))
        << "  (combined bound " << io::format_number(bound) << ")\n"
        << "identity check  = " << verdict << "\n";
  }
  return within ? kOk : kInvalid;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bessel product integrals as rapidly convergent sums"};
  app.require_subcommand(1);

  SpecFlags compute_spec, validate_spec, sweep_spec, compare_spec;
  std::int64_t terms = 10, sweep_terms = 10, compare_terms = 10, max_terms = 1'000'000;
  std::string tol, t_max = "10", compare_t_max = "10", range, out_path;
  std::string compute_format = "text", validate_format = "text", sweep_format = "csv", compare_format = "text";
  bool no_accel = false, compare_no_accel = false;
  long vary = -1;

  auto* compute = app.add_subcommand("compute", "Evaluate the sum");
  compute_spec.attach(compute);
  compute->add_option("--terms", terms, "Sum terms m = 0..M")->capture_default_str();
  auto* tol_opt = compute->add_option("--tol", tol, "Target error bound (chooses M)");
  compute->add_option("--max-terms", max_terms, "Term cap for --tol")->capture_default_str();
  compute->add_flag("--no-accel", no_accel, "Disable tail acceleration");
  compute->add_option("--format", compute_format, "json|text")->capture_default_str();
  compute->get_option("--terms")->excludes(tol_opt);

  auto* validate = app.add_subcommand("validate", "Report the validity rules");
  validate_spec.attach(validate);
  validate->add_option("--format", validate_format, "json|text")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Sum and quadrature over a range of one scale");
  sweep_spec.attach(sweep);
  sweep->add_option("--vary", vary, "Index of the swept factor (default: last)");
  sweep->add_option("--range", range, "start:stop:count");
  sweep->add_option("--terms", sweep_terms, "Sum terms")->capture_default_str();
  sweep->add_option("--t-max", t_max, "Quadrature upper limit")->capture_default_str();
  sweep->add_option("--out", out_path, "Output file (default: stdout)");
  sweep->add_option("--format", sweep_format, "csv|json")->capture_default_str();

  auto* compare = app.add_subcommand("compare", "Compare the sum against the quadrature oracle");
  compare_spec.attach(compare);
  compare->add_option("--terms", compare_terms, "Sum terms")->capture_default_str();
  compare->add_option("--t-max", compare_t_max, "Quadrature upper limit")->capture_default_str();
  compare->add_flag("--no-accel", compare_no_accel, "Disable tail acceleration");
  compare->add_option("--format", compare_format, "json|text")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kParseError;
  }

  try {
    if (*compute) return cmd_compute(compute_spec, terms, tol, max_terms, no_accel, compute_format, out);
    if (*validate) return cmd_validate(validate_spec, validate_format, out);
    if (*sweep) return cmd_sweep(sweep_spec, vary, range, sweep_terms, t_max, out_path, sweep_format, out);
    if (*compare) return cmd_compare(compare_spec, compare_terms, compare_t_max, compare_no_accel, compare_format, out);
  } catch (const identity::InvalidSpec& e) {
    err << "error: " << e.what() << "\n" << io::to_json(e.report()) << "\n";
    return kInvalid;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const SizeError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }
  return kParseError;
}

}  // namespace besselsum::cli
