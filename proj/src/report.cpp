#include "ccheck/report.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "ccheck/frontend.hpp"

namespace ccheck {

int exit_code(const CompletenessReport& r) {
  auto gating = [&](const DriverVerdict& v) {
    return v.family != DriverFamily::Equivalence || r.equivalence_required;
  };
  auto any = [&](std::initializer_list<VerdictStatus> which) {
    for (const DriverVerdict* v : r.all())
      if (gating(*v) && std::find(which.begin(), which.end(), v->status) != which.end()) return true;
    return false;
  };
  if (any({VerdictStatus::InfeasibleCall, VerdictStatus::BoundsTooSmall})) return 3;
  if (any({VerdictStatus::Invalid, VerdictStatus::PreconditionUnprovable})) return 1;
  if (any({VerdictStatus::ResourceLimit})) return 5;
  return r.complete ? 0 : 1;
}

namespace {

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorCode::MalformedTrace, why); }
[[noreturn]] void stale(const std::string& why) { throw Error(ErrorCode::StaleTrace, why); }

Json value_to_json(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Undefined: return nullptr;
    case Value::Kind::Bool: return v.scalar != 0;
    case Value::Kind::Seq: return v.seq;
    default: return v.scalar;
  }
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) malformed(std::string("missing field '") + name + "'");
  return j.at(name);
}

int int_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer()) malformed(std::string("field '") + name + "' must be an integer");
  return v.get<int>();
}

Value value_from_json(const Json& j, ValueType t, const std::string& where) {
  switch (t) {
    case ValueType::Bool:
      if (!j.is_boolean()) malformed(where + " must be a boolean");
      return Value::boolean(j.get<bool>());
    case ValueType::Seq: {
      if (!j.is_array()) malformed(where + " must be an array");
      std::vector<int> seq;
      for (const auto& e : j) {
        if (!e.is_number_integer()) malformed(where + " must hold integers");
        seq.push_back(e.get<int>());
      }
      return Value::sequence(std::move(seq));
    }
    default:
      if (!j.is_number_integer()) malformed(where + " must be an integer");
      return Value::element(j.get<int>());
  }
}

}  // namespace

Json state_to_json(const ObjectState& s, const ContractClass& cls) {
  Json out = Json::object();
  const auto comps = cls.components();
  for (std::size_t i = 0; i < comps.size() && i < s.slots.size(); ++i)
    out[comps[i].name] = s.is_masked(int(i)) ? Json(nullptr) : value_to_json(s.slots[i]);
  return out;
}

ObjectState state_from_json(const Json& j, const ContractClass& cls) {
  if (!j.is_object()) malformed("a state must be an object");
  const auto comps = cls.components();
  std::set<std::string> expected;
  for (const auto& c : comps) expected.insert(c.name);
  for (const auto& [k, v] : j.items())
    if (!expected.count(k)) stale("component '" + k + "' is not declared by " + cls.name);
  ObjectState s;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (!j.contains(comps[i].name)) stale("state lacks component '" + comps[i].name + "'");
    const Json& v = j.at(comps[i].name);
    if (v.is_null()) {
      if (comps[i].is_model) malformed("model field '" + comps[i].name + "' cannot be null");
      s.masked |= std::uint64_t(1) << i;
      s.slots.push_back(comps[i].type == ValueType::Bool ? Value::boolean(false) : Value::element(0));
    } else {
      s.slots.push_back(value_from_json(v, comps[i].type, "component '" + comps[i].name + "'"));
    }
  }
  return s;
}

Json counterexample_to_json(const Counterexample& cex, const SpecDriver& d, const ContractClass& cls) {
  Json j;
  j["driver"] = cex.driver;
  j["driver_text"] = pretty_print(d);
  j["bounds"] = {{"k", cex.bounds.k}, {"len", cex.bounds.len}};
  Json objs = Json::array();
  for (std::size_t o = 0; o < d.objects.size(); ++o)
    objs.push_back({{"name", d.objects[o].name}, {"identity", cex.identities[o]}});
  j["objects"] = objs;
  Json params = Json::object();
  for (std::size_t i = 0; i < d.params.size(); ++i) params[d.params[i].name] = value_to_json(cex.params[i]);
  j["params"] = params;
  Json initial = Json::array();
  for (const auto& s : cex.initial) initial.push_back(s ? state_to_json(*s, cls) : Json(nullptr));
  j["initial"] = initial;
  Json steps = Json::array();
  for (std::size_t i = 0; i < cex.steps.size(); ++i) {
    const Call& c = d.body[i];
    std::string text = (c.creation ? "create " : "") + d.objects[std::size_t(c.target)].name + "." + c.feature;
    if (!c.args.empty()) {
      text += "(";
      for (std::size_t a = 0; a < c.args.size(); ++a) text += (a ? ", " : "") + to_string(c.args[a]);
      text += ")";
    }
    steps.push_back({{"call", text},
                     {"target", d.objects[std::size_t(c.target)].name},
                     {"post", state_to_json(cex.steps[i], cls)}});
  }
  j["steps"] = steps;
  j["failure"] = {{"kind", std::string(to_string(cex.kind))}, {"index", cex.index}, {"clause", cex.clause}};
  j["narrative"] = cex.narrative;
  return j;
}

std::string trace_driver(const Json& j) {
  const Json& v = field(j, "driver");
  if (!v.is_string()) malformed("field 'driver' must be a string");
  return v.get<std::string>();
}

Json parse_trace(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) malformed("trace is not valid JSON");
  if (!j.is_object()) malformed("trace must be a JSON object");
  return j;
}

Counterexample counterexample_from_json(const Json& j, const SpecDriver& d, const ContractClass& cls) {
  Counterexample c;
  c.driver = trace_driver(j);
  if (c.driver != d.name) stale("trace belongs to driver " + c.driver + ", not " + d.name);
  const Json& b = field(j, "bounds");
  c.bounds = {int_field(b, "k"), int_field(b, "len")};

  const Json& objs = field(j, "objects");
  if (!objs.is_array()) malformed("field 'objects' must be an array");
  if (objs.size() != d.objects.size()) stale("trace objects do not match driver " + d.name);
  for (std::size_t o = 0; o < objs.size(); ++o) {
    const Json& name = field(objs[o], "name");
    if (!name.is_string()) malformed("object name must be a string");
    if (name.get<std::string>() != d.objects[o].name) stale("trace object " + name.get<std::string>() + " is not declared");
    c.identities.push_back(int_field(objs[o], "identity"));
  }

  const Json& params = field(j, "params");
  if (!params.is_object()) malformed("field 'params' must be an object");
  if (params.size() != d.params.size()) stale("trace parameters do not match driver " + d.name);
  for (const auto& p : d.params) {
    if (!params.contains(p.name)) stale("trace lacks parameter " + p.name);
    c.params.push_back(value_from_json(params.at(p.name), p.type, "parameter '" + p.name + "'"));
  }

  const Json& initial = field(j, "initial");
  if (!initial.is_array()) malformed("field 'initial' must be an array");
  for (const auto& s : initial)
    c.initial.push_back(s.is_null() ? std::nullopt : std::optional<ObjectState>(state_from_json(s, cls)));

  const Json& steps = field(j, "steps");
  if (!steps.is_array()) malformed("field 'steps' must be an array");
  for (const auto& s : steps) c.steps.push_back(state_from_json(field(s, "post"), cls));

  const Json& failure = field(j, "failure");
  const Json& kind = field(failure, "kind");
  if (!kind.is_string()) malformed("failure kind must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "postcondition")
    c.kind = FailureKind::Postcondition;
  else if (k == "callee_precondition")
    c.kind = FailureKind::CalleePrecondition;
  else if (k == "infeasible_call")
    c.kind = FailureKind::InfeasibleCall;
  else
    malformed("unknown failure kind '" + k + "'");
  c.index = int_field(failure, "index");
  const Json& clause = field(failure, "clause");
  if (!clause.is_string()) malformed("failure clause must be a string");
  c.clause = clause.get<std::string>();
  if (j.contains("narrative") && j.at("narrative").is_array())
    for (const auto& line : j.at("narrative"))
      if (line.is_string()) c.narrative.push_back(line.get<std::string>());
  return c;
}

namespace {

const SpecDriver* find_driver(const DriverSuite& suite, const std::string& name) {
  for (const auto* set : {&suite.axioms, &suite.equivalence, &suite.well_definedness})
    for (const auto& d : *set)
      if (d.name == name) return &d;
  return nullptr;
}

}  // namespace

Json report_to_json(const CompletenessReport& r, const DriverSuite& suite, const ContractClass& cls) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["adt"] = r.adt;
  j["class"] = r.cls;
  j["bounds"] = {{"k", r.bounds.k}, {"len", r.bounds.len}};
  j["verdict"] = {{"correct", r.correct},
                  {"well_defined", r.well_defined},
                  {"complete", r.complete},
                  {"equivalence_required", r.equivalence_required}};
  Json drivers = Json::array();
  for (const DriverVerdict* v : r.all()) {
    Json dj;
    dj["name"] = v->driver;
    dj["family"] = std::string(to_string(v->family));
    dj["status"] = std::string(to_string(v->status));
    dj["vacuous"] = v->vacuous;
    dj["statistics"] = {{"environments", v->stats.environments},
                         {"branches", v->stats.branches},
                         {"pruned", v->stats.pruned}};
    const SpecDriver* d = find_driver(suite, v->driver);
    dj["counterexample"] = v->counterexample && d ? counterexample_to_json(*v->counterexample, *d, cls) : Json(nullptr);
    drivers.push_back(std::move(dj));
  }
  j["drivers"] = drivers;
  j["exit_code"] = exit_code(r);
  return j;
}

std::string report_to_text(const CompletenessReport& r, const DriverSuite& suite) {
  (void)suite;
  std::ostringstream out;
  out << "adt " << r.adt << ", class " << r.cls << ", bounds k=" << r.bounds.k << ", L=" << r.bounds.len << "\n\n";
  std::size_t width = 0;
  for (const DriverVerdict* v : r.all()) width = std::max(width, v->driver.size());
  for (const DriverVerdict* v : r.all()) {
    std::string status(to_string(v->status));
    if (v->vacuous) status += " (vacuous)";
    if (v->family == DriverFamily::Equivalence && !r.equivalence_required) status += " (not required)";
    char line[256];
    std::snprintf(line, sizeof line, "%-*s  %-24s environments=%lld branches=%lld pruned=%lld", int(width),
                  v->driver.c_str(), status.c_str(), v->stats.environments, v->stats.branches, v->stats.pruned);
    out << line << '\n';
    if (v->counterexample)
      for (const auto& n : v->counterexample->narrative) out << "    " << n << '\n';
  }
  out << "\ncorrect: " << (r.correct ? "true" : "false") << '\n';
  out << "well_defined: " << (r.well_defined ? "true" : "false") << '\n';
  out << "complete: " << (r.complete ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace ccheck
