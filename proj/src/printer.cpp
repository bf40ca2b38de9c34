#include <sstream>

#include "ccheck/frontend.hpp"

namespace ccheck {

namespace {

std::string type_name(ValueType t, const std::string& element) {
  return t == ValueType::Bool ? "BOOLEAN" : element;
}

std::string call_text(const Call& c, const SpecDriver& d) {
  std::string s = c.creation ? "create " : "";
  s += d.objects.at(std::size_t(c.target)).name + "." + c.feature;
  if (!c.args.empty()) {
    s += "(";
    for (std::size_t i = 0; i < c.args.size(); ++i) {
      if (i) s += ", ";
      s += to_string(c.args[i]);
    }
    s += ")";
  }
  return s;
}

}  // namespace

std::string pretty_print(const AdtSpec& adt) {
  std::ostringstream out;
  out << "adt " << adt.name;
  if (!adt.parameter.empty()) out << '[' << adt.parameter << ']';
  out << "\n\nfunctions\n";
  for (const auto& f : adt.functions) {
    out << "  " << f.name << ":";
    for (std::size_t i = 0; i < f.arg_sorts.size(); ++i)
      out << (i ? " x " : " ") << f.arg_sorts[i].name;
    out << (f.partial ? " ->? " : " -> ") << f.result_sort.name << '\n';
  }
  out << "\npreconditions\n";
  for (const auto& p : adt.preconditions) {
    out << "  " << p.function << '(';
    for (std::size_t i = 0; i < p.formal_vars.size(); ++i)
      out << (i ? ", " : "") << p.formal_vars[i].name;
    out << ") requires " << to_string(p.condition) << '\n';
  }
  out << "\naxioms\n";
  for (const auto& ax : adt.axioms) out << "  " << ax.label << ": " << to_string(ax.body) << '\n';
  return out.str();
}

std::string pretty_print(const ContractClass& cls) {
  std::ostringstream out;
  out << "class " << cls.name;
  if (!cls.parameter.empty()) out << '[' << cls.parameter << ']';
  out << '\n';
  for (const auto& m : cls.model_fields) out << "model " << m.name << ": SEQ[" << cls.parameter << "]\n";
  out << "create " << cls.creation_feature << '\n';
  for (const auto& m : cls.mapping) out << "map " << m.adt_function << " -> " << m.feature << '\n';
  for (const auto& f : cls.features) {
    out << '\n' << (f.kind == FeatureKind::Command ? "command " : "query ") << f.name;
    if (!f.params.empty()) {
      out << '(';
      for (std::size_t i = 0; i < f.params.size(); ++i)
        out << (i ? "; " : "") << f.params[i].name << ": "
            << type_name(f.params[i].type, cls.parameter);
      out << ')';
    }
    if (f.kind == FeatureKind::Query) out << ": " << type_name(f.result_type, cls.parameter);
    out << '\n';
    for (const auto& c : f.require)
      out << "  require " << (c.label.empty() ? "" : c.label + ": ") << to_string(c.expr) << '\n';
    for (const auto& c : f.ensure)
      out << "  ensure " << (c.label.empty() ? "" : c.label + ": ") << to_string(c.expr) << '\n';
  }
  if (cls.equality) out << "\nequality: " << to_string(*cls.equality) << '\n';
  return out.str();
}

std::string pretty_print(const SpecDriver& d) {
  std::ostringstream out;
  out << d.name;

  // Header groups consecutive declarations of one type: (s1, s2: T; x: G).
  std::vector<std::pair<std::string, std::vector<std::string>>> groups;
  auto add = [&](const std::string& type, const std::string& name) {
    if (groups.empty() || groups.back().first != type) groups.push_back({type, {}});
    groups.back().second.push_back(name);
  };
  for (const auto& o : d.objects)
    if (!o.created) add(d.object_type, o.name);
  for (const auto& p : d.params) add(type_name(p.type, d.element_type), p.name);
  if (!groups.empty()) {
    out << " (";
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (g) out << "; ";
      for (std::size_t i = 0; i < groups[g].second.size(); ++i)
        out << (i ? ", " : "") << groups[g].second[i];
      out << ": " << groups[g].first;
    }
    out << ')';
  }
  out << '\n';

  bool any_local = false;
  for (const auto& o : d.objects) {
    if (!o.created) continue;
    if (!any_local) out << "  local\n";
    any_local = true;
    out << "    " << o.name << ": " << d.object_type << '\n';
  }
  if (!d.pre.empty()) {
    out << "  require\n";
    for (const auto& e : d.pre) out << "    " << to_string(e) << '\n';
  }
  out << "  do\n";
  for (const auto& c : d.body) out << "    " << call_text(c, d) << '\n';
  out << "  ensure\n";
  for (const auto& e : d.post) out << "    " << to_string(e) << '\n';
  out << "  end\n";
  return out.str();
}

std::string pretty_print(const DriverSet& drivers) {
  std::string out;
  for (std::size_t i = 0; i < drivers.size(); ++i) {
    if (i) out += '\n';
    out += pretty_print(drivers[i]);
  }
  return out;
}

}  // namespace ccheck
