// ccheck: contract completeness checking from ADT specifications.
//
//   ccheck check   SPEC.adt CLASS.ct [--k N] [--len N] [--format text|json] [--out PATH]
//   ccheck drivers SPEC.adt CLASS.ct [--force-equivalence-drivers]
//   ccheck explain SPEC.adt CLASS.ct TRACE.json [--driver NAME]

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "ccheck/checker.hpp"
#include "ccheck/frontend.hpp"
#include "ccheck/report.hpp"

namespace {

using namespace ccheck;

constexpr int kExitUsage = 2;
constexpr int kExitStale = 4;

struct Inputs {
  AdtSpec adt;
  ContractClass cls;
  DriverSuite suite;
};

void print(const Diagnostics& diags) {
  for (const auto& d : diags) std::cerr << d.format() << '\n';
}

std::optional<Inputs> load(const std::string& adt_path, const std::string& ct_path) {
  Inputs in;
  try {
    auto adt = parse_adt(read_file(adt_path), adt_path);
    if (!adt) {
      print(adt.diagnostics());
      return std::nullopt;
    }
    auto cls = parse_contract(read_file(ct_path), ct_path);
    if (!cls) {
      print(cls.diagnostics());
      return std::nullopt;
    }
    in.adt = adt.value();
    in.cls = cls.value();
    in.suite = generate_drivers(in.adt, in.cls);
  } catch (const Error& e) {
    std::cerr << e.to_diagnostic().format() << '\n';
    return std::nullopt;
  }
  return in;
}

bool emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot write " << out << '\n';
    return false;
  }
  f << text;
  return true;
}

struct Options {
  std::string adt;
  std::string ct;
  std::string trace;
  std::string driver;
  std::string format = "text";
  std::string out;
  int k = 2;
  int len = 3;
  long long branch_cap = 10'000'000;
  bool force_equivalence = false;
};

int cmd_check(const Options& o) {
  auto in = load(o.adt, o.ct);
  if (!in) return kExitUsage;
  if (o.force_equivalence) in->suite.equivalence_required = true;
  CheckOptions opt;
  opt.bounds = {o.k, o.len};
  opt.branch_cap = o.branch_cap;
  CompletenessReport r = check_completeness(in->adt, in->cls, in->suite, opt);
  std::string text = o.format == "json" ? report_to_json(r, in->suite, in->cls).dump(2) + "\n"
                                        : report_to_text(r, in->suite);
  if (!emit(text, o.out)) return kExitUsage;
  return exit_code(r);
}

int cmd_drivers(const Options& o) {
  auto in = load(o.adt, o.ct);
  if (!in) return kExitUsage;
  DriverSet listing = in->suite.axioms;
  if (in->suite.equivalence_required || o.force_equivalence)
    listing.insert(listing.end(), in->suite.equivalence.begin(), in->suite.equivalence.end());
  listing.insert(listing.end(), in->suite.well_definedness.begin(), in->suite.well_definedness.end());
  return emit(pretty_print(listing), o.out) ? 0 : kExitUsage;
}

// Accepts a bare counterexample or a full report; in a report the trace of
// --driver (or the first one present) is used.
const Json* pick_trace(const Json& doc, const std::string& driver) {
  if (!doc.contains("drivers")) return &doc;
  const Json& drivers = doc.at("drivers");
  if (!drivers.is_array()) throw Error(ErrorCode::MalformedTrace, "field 'drivers' must be an array");
  for (const auto& d : drivers) {
    if (!d.is_object() || !d.contains("counterexample") || d.at("counterexample").is_null()) continue;
    if (driver.empty() || (d.contains("name") && d.at("name") == driver)) return &d.at("counterexample");
  }
  throw Error(ErrorCode::MalformedTrace, "report holds no counterexample" + (driver.empty() ? "" : " for " + driver));
}

int cmd_explain(const Options& o, bool k_given, bool len_given) {
  auto in = load(o.adt, o.ct);
  if (!in) return kExitUsage;
  try {
    Json doc = parse_trace(read_file(o.trace));
    const Json& j = *pick_trace(doc, o.driver);
    const std::string name = trace_driver(j);
    if (!o.driver.empty() && name != o.driver)
      throw Error(ErrorCode::StaleTrace, "trace belongs to driver " + name + ", not " + o.driver);
    const SpecDriver* d = nullptr;
    const DriverSet all = in->suite.all();
    for (const auto& cand : all)
      if (cand.name == name) d = &cand;
    if (!d) throw Error(ErrorCode::StaleTrace, "no driver named " + name + " is generated for " + in->cls.name);
    Counterexample cex = counterexample_from_json(j, *d, in->cls);
    Bounds b = cex.bounds;
    if (k_given) b.k = o.k;
    if (len_given) b.len = o.len;
    bool witnesses = replay_counterexample(cex, *d, in->cls, b);
    for (const auto& line : narrate(cex, *d, in->cls)) std::cout << line << '\n';
    if (!witnesses) {
      std::cout << "stale: the trace no longer witnesses a failure of " << name << '\n';
      return kExitStale;
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << e.to_diagnostic(o.trace).format() << '\n';
    if (e.code() == ErrorCode::StaleTrace) return kExitStale;
    return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contract completeness checking against ADT specifications"};
  app.require_subcommand(1);
  Options o;

  auto add_inputs = [&](CLI::App* sub) {
    sub->add_option("adt", o.adt, "ADT specification (.adt)")->required();
    sub->add_option("contract", o.ct, "contracted class (.ct)")->required();
  };
  auto add_bounds = [&](CLI::App* sub) {
    sub->add_option("--k", o.k, "element domain size")->check(CLI::PositiveNumber);
    sub->add_option("--len", o.len, "maximum model sequence length")->check(CLI::NonNegativeNumber);
  };

  auto* check = app.add_subcommand("check", "check every driver and report completeness");
  add_inputs(check);
  add_bounds(check);
  check->add_option("--format", o.format, "report format")->check(CLI::IsMember({"text", "json"}));
  check->add_option("--out", o.out, "write the report to PATH");
  check->add_option("--branch-cap", o.branch_cap, "maximum explored branches per driver")
      ->check(CLI::PositiveNumber);
  check->add_flag("--force-equivalence-drivers", o.force_equivalence,
                  "make the equivalence drivers count towards correctness");

  auto* drivers = app.add_subcommand("drivers", "print the generated drivers");
  add_inputs(drivers);
  drivers->add_option("--out", o.out, "write the listing to PATH");
  drivers->add_flag("--force-equivalence-drivers", o.force_equivalence, "list the equivalence drivers");

  auto* explain = app.add_subcommand("explain", "replay a counterexample trace");
  add_inputs(explain);
  explain->add_option("trace", o.trace, "counterexample or report (.json)")->required();
  explain->add_option("--driver", o.driver, "driver whose trace to replay");
  auto* kopt = explain->add_option("--k", o.k, "element domain size")->check(CLI::PositiveNumber);
  auto* lopt = explain->add_option("--len", o.len, "maximum model sequence length")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  if (*check) return cmd_check(o);
  if (*drivers) return cmd_drivers(o);
  return cmd_explain(o, kopt->count() > 0, lopt->count() > 0);
}
