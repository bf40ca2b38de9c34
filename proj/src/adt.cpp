#include "ccheck/adt.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ccheck {

Sort boolean_sort() { return {"BOOLEAN", SortKind::Boolean}; }

std::string_view to_string(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::Unclassified: return "unclassified";
    case FunctionKind::Creator: return "creator";
    case FunctionKind::Transformer: return "transformer";
    case FunctionKind::Observer: return "observer";
  }
  return "unclassified";
}

Term Term::variable(std::string name, Sort sort, SourcePos pos) {
  Term t;
  t.kind = Kind::Variable;
  t.name = std::move(name);
  t.sort = std::move(sort);
  t.pos = pos;
  return t;
}

Term Term::apply(std::string fn, std::vector<Term> args, SourcePos pos) {
  Term t;
  t.kind = Kind::Application;
  t.name = std::move(fn);
  t.args = std::move(args);
  t.pos = pos;
  return t;
}

Term Term::negate(Term inner, SourcePos pos) {
  Term t;
  t.kind = Kind::Negation;
  t.sort = boolean_sort();
  t.args.push_back(std::move(inner));
  t.pos = pos;
  return t;
}

Term Term::equation(Term lhs, Term rhs, SourcePos pos) {
  Term t;
  t.kind = Kind::Equation;
  t.sort = boolean_sort();
  t.args.push_back(std::move(lhs));
  t.args.push_back(std::move(rhs));
  t.pos = pos;
  return t;
}

const Sort& AdtSpec::principal() const {
  for (const auto& s : sorts)
    if (s.kind == SortKind::Principal) return s;
  throw Error(ErrorCode::UnsortedTerm, "specification has no principal sort");
}

const FunctionSig* AdtSpec::find_function(std::string_view fn) const {
  for (const auto& f : functions)
    if (f.name == fn) return &f;
  return nullptr;
}

const Precondition* AdtSpec::find_precondition(std::string_view fn) const {
  for (const auto& p : preconditions)
    if (p.function == fn) return &p;
  return nullptr;
}

const Sort* AdtSpec::find_sort(std::string_view name) const {
  for (const auto& s : sorts)
    if (s.name == name) return &s;
  return nullptr;
}

Sort term_sort(const Term& t, const AdtSpec& spec) {
  switch (t.kind) {
    case Term::Kind::Negation:
    case Term::Kind::Equation:
      return boolean_sort();
    case Term::Kind::Variable:
      if (t.sort.name.empty()) {
        if (const auto* f = spec.find_function(t.name); f && f->arg_sorts.empty())
          return f->result_sort;
        throw Error(ErrorCode::UnsortedTerm, "variable '" + t.name + "' has no sort");
      }
      return t.sort;
    case Term::Kind::Application:
      if (const auto* f = spec.find_function(t.name)) return f->result_sort;
      throw Error(ErrorCode::UnsortedTerm, "unknown function '" + t.name + "'");
  }
  throw Error(ErrorCode::UnsortedTerm, "malformed term");
}

namespace {

void collect_vars(const Term& t, bool repeats, std::vector<TypedVar>& out) {
  if (t.kind == Term::Kind::Variable) {
    bool seen = std::any_of(out.begin(), out.end(),
                            [&](const TypedVar& v) { return v.name == t.name; });
    if (repeats || !seen) out.push_back({t.name, t.sort});
    return;
  }
  for (const auto& a : t.args) collect_vars(a, repeats, out);
}

class Validator {
 public:
  explicit Validator(AdtSpec& spec) : spec_(spec) {}

  Diagnostics run();

 private:
  void error(ErrorCode code, SourcePos pos, std::string msg, std::string tok = {}) {
    diags_.push_back({"", pos, Severity::Error, code, std::move(msg), std::move(tok)});
  }

  std::optional<Sort> resolve_sort(const Sort& s) const {
    if (const auto* found = spec_.find_sort(s.name)) return *found;
    return std::nullopt;
  }

  void check_sorts();
  void check_functions();
  void check_preconditions();
  void check_axioms();

  // Resolves nullary applications and infers variable sorts. Returns the
  // sort of `t` if it could be determined.
  std::optional<Sort> infer(Term& t, const std::optional<Sort>& expected,
                            std::map<std::string, Sort>& vars,
                            const std::string& where);
  void fill_vars(Term& t, const std::map<std::string, Sort>& vars);

  AdtSpec& spec_;
  Diagnostics diags_;
};

Diagnostics Validator::run() {
  check_sorts();
  if (!diags_.empty()) return diags_;
  check_functions();
  check_preconditions();
  check_axioms();
  return diags_;
}

void Validator::check_sorts() {
  int principals = 0;
  std::set<std::string> names;
  for (const auto& s : spec_.sorts) {
    if (!names.insert(s.name).second)
      error(ErrorCode::DuplicateName, {}, "duplicate sort '" + s.name + "'", s.name);
    if (s.kind == SortKind::Principal) ++principals;
  }
  if (principals != 1)
    error(ErrorCode::SortMismatch, {},
          "expected exactly one principal sort, found " + std::to_string(principals));
  if (!spec_.find_sort("BOOLEAN")) spec_.sorts.push_back(boolean_sort());
}

void Validator::check_functions() {
  std::set<std::string> names;
  for (auto& f : spec_.functions) {
    if (!names.insert(f.name).second) {
      error(ErrorCode::DuplicateName, f.pos, "duplicate function '" + f.name + "'", f.name);
      continue;
    }
    bool sorts_ok = true;
    for (auto& a : f.arg_sorts) {
      if (auto r = resolve_sort(a)) {
        a = *r;
      } else {
        error(ErrorCode::UnknownSymbol, f.pos,
              "function '" + f.name + "' uses unknown sort '" + a.name + "'", a.name);
        sorts_ok = false;
      }
    }
    if (auto r = resolve_sort(f.result_sort)) {
      f.result_sort = *r;
    } else {
      error(ErrorCode::UnknownSymbol, f.pos,
            "function '" + f.name + "' uses unknown sort '" + f.result_sort.name + "'",
            f.result_sort.name);
      sorts_ok = false;
    }
    if (!sorts_ok) continue;

    bool principal_first = !f.arg_sorts.empty() && f.arg_sorts[0].kind == SortKind::Principal;
    for (std::size_t i = 1; i < f.arg_sorts.size(); ++i) {
      if (f.arg_sorts[i].kind == SortKind::Principal) {
        error(ErrorCode::SortMismatch, f.pos,
              "function '" + f.name + "' takes the principal sort in position " +
                  std::to_string(i + 1) + "; only the first argument may be principal",
              f.name);
        sorts_ok = false;
      }
    }
    if (!sorts_ok) continue;
    bool principal_result = f.result_sort.kind == SortKind::Principal;
    if (!principal_first && principal_result) {
      f.kind = FunctionKind::Creator;
    } else if (principal_first && principal_result) {
      f.kind = FunctionKind::Transformer;
    } else if (principal_first) {
      f.kind = FunctionKind::Observer;
    } else {
      error(ErrorCode::SortMismatch, f.pos,
            "function '" + f.name + "' neither takes nor returns the principal sort", f.name);
      continue;
    }
    if (f.kind == FunctionKind::Creator && f.partial)
      error(ErrorCode::SortMismatch, f.pos, "creator '" + f.name + "' cannot be partial",
            f.name);
  }
}

std::optional<Sort> Validator::infer(Term& t, const std::optional<Sort>& expected,
                                     std::map<std::string, Sort>& vars,
                                     const std::string& where) {
  auto mismatch = [&](const Sort& got) {
    error(ErrorCode::SortMismatch, t.pos,
          where + ": expected " + expected->name + " but '" + to_string(t) + "' has sort " +
              got.name,
          t.kind == Term::Kind::Variable || t.kind == Term::Kind::Application ? t.name : "");
  };

  if (t.kind == Term::Kind::Variable) {
    if (const auto* f = spec_.find_function(t.name)) {
      if (f->arg_sorts.empty()) {
        t.kind = Term::Kind::Application;
        t.sort = {};
      } else {
        error(ErrorCode::SortMismatch, t.pos,
              where + ": function '" + t.name + "' applied to no arguments", t.name);
        return std::nullopt;
      }
    }
  }

  switch (t.kind) {
    case Term::Kind::Variable: {
      if (!t.sort.name.empty()) {
        auto r = resolve_sort(t.sort);
        if (!r) {
          error(ErrorCode::UnknownSymbol, t.pos, where + ": unknown sort '" + t.sort.name + "'",
                t.sort.name);
          return std::nullopt;
        }
        t.sort = *r;
        auto [it, fresh] = vars.emplace(t.name, t.sort);
        if (!fresh && !(it->second == t.sort)) {
          error(ErrorCode::SortMismatch, t.pos,
                where + ": variable '" + t.name + "' used with sorts " + it->second.name +
                    " and " + t.sort.name,
                t.name);
          return std::nullopt;
        }
      }
      if (auto it = vars.find(t.name); it != vars.end()) {
        if (expected && !(*expected == it->second)) {
          mismatch(it->second);
          return std::nullopt;
        }
        return it->second;
      }
      if (expected) {
        vars.emplace(t.name, *expected);
        return expected;
      }
      return std::nullopt;
    }
    case Term::Kind::Application: {
      const auto* f = spec_.find_function(t.name);
      if (!f) {
        error(ErrorCode::UnknownSymbol, t.pos, where + ": unknown function '" + t.name + "'",
              t.name);
        return std::nullopt;
      }
      if (f->kind == FunctionKind::Unclassified) return std::nullopt;  // already reported
      if (t.args.size() != f->arg_sorts.size()) {
        error(ErrorCode::SortMismatch, t.pos,
              where + ": '" + t.name + "' expects " + std::to_string(f->arg_sorts.size()) +
                  " argument(s), got " + std::to_string(t.args.size()),
              t.name);
        return std::nullopt;
      }
      for (std::size_t i = 0; i < t.args.size(); ++i)
        infer(t.args[i], f->arg_sorts[i], vars, where);
      t.sort = f->result_sort;
      if (expected && !(*expected == f->result_sort)) {
        mismatch(f->result_sort);
        return std::nullopt;
      }
      return f->result_sort;
    }
    case Term::Kind::Negation: {
      t.sort = boolean_sort();
      infer(t.args.at(0), boolean_sort(), vars, where);
      if (expected && !(*expected == t.sort)) mismatch(t.sort);
      return t.sort;
    }
    case Term::Kind::Equation: {
      t.sort = boolean_sort();
      auto& lhs = t.args.at(0);
      auto& rhs = t.args.at(1);
      auto ls = infer(lhs, std::nullopt, vars, where);
      if (ls) {
        infer(rhs, ls, vars, where);
      } else {
        auto rs = infer(rhs, std::nullopt, vars, where);
        if (rs) {
          infer(lhs, rs, vars, where);
        } else {
          error(ErrorCode::UnsortedTerm, t.pos,
                where + ": cannot determine the sort of '" + to_string(t) + "'");
        }
      }
      if (expected && !(*expected == t.sort)) mismatch(t.sort);
      return t.sort;
    }
  }
  return std::nullopt;
}

void Validator::fill_vars(Term& t, const std::map<std::string, Sort>& vars) {
  if (t.kind == Term::Kind::Variable) {
    if (auto it = vars.find(t.name); it != vars.end()) t.sort = it->second;
  }
  for (auto& a : t.args) fill_vars(a, vars);
}

void Validator::check_preconditions() {
  std::set<std::string> seen;
  for (auto& p : spec_.preconditions) {
    const auto* f = spec_.find_function(p.function);
    if (!f) {
      error(ErrorCode::UnknownSymbol, p.pos,
            "precondition for unknown function '" + p.function + "'", p.function);
      continue;
    }
    if (!seen.insert(p.function).second) {
      error(ErrorCode::DuplicateName, p.pos,
            "duplicate precondition for '" + p.function + "'", p.function);
      continue;
    }
    if (p.formal_vars.size() != f->arg_sorts.size()) {
      error(ErrorCode::SortMismatch, p.pos,
            "precondition of '" + p.function + "' binds " + std::to_string(p.formal_vars.size()) +
                " variable(s) but the function takes " + std::to_string(f->arg_sorts.size()),
            p.function);
      continue;
    }
    std::map<std::string, Sort> vars;
    for (std::size_t i = 0; i < p.formal_vars.size(); ++i) {
      p.formal_vars[i].sort = f->arg_sorts[i];
      if (!vars.emplace(p.formal_vars[i].name, f->arg_sorts[i]).second)
        error(ErrorCode::DuplicateName, p.pos,
              "variable '" + p.formal_vars[i].name + "' bound twice", p.formal_vars[i].name);
    }
    std::size_t before = diags_.size();
    std::map<std::string, Sort> scope = vars;
    infer(p.condition, boolean_sort(), scope, "precondition of " + p.function);
    if (diags_.size() != before) continue;
    for (const auto& [name, sort] : scope) {
      if (!vars.count(name))
        error(ErrorCode::UnknownSymbol, p.pos,
              "precondition of '" + p.function + "' mentions unbound variable '" + name + "'",
              name);
    }
    fill_vars(p.condition, vars);
  }
  for (const auto& f : spec_.functions) {
    if (f.partial && !spec_.find_precondition(f.name))
      error(ErrorCode::PartialWithoutPrecondition, f.pos,
            "partial function '" + f.name + "' has no precondition", f.name);
  }
}

bool is_observer_app(const Term& t, const AdtSpec& spec) {
  if (t.kind != Term::Kind::Application) return false;
  const auto* f = spec.find_function(t.name);
  return f && f->kind == FunctionKind::Observer;
}

void Validator::check_axioms() {
  std::set<std::string> labels;
  for (auto& ax : spec_.axioms) {
    if (!labels.insert(ax.label).second) {
      error(ErrorCode::DuplicateName, ax.pos, "duplicate axiom label '" + ax.label + "'",
            ax.label);
      continue;
    }
    std::map<std::string, Sort> vars;
    for (const auto& u : ax.universals)
      if (!u.sort.name.empty()) vars.emplace(u.name, u.sort);
    std::size_t before = diags_.size();
    infer(ax.body, boolean_sort(), vars, "axiom " + ax.label);
    if (diags_.size() != before) continue;
    fill_vars(ax.body, vars);
    for (const auto& v : term_variables(ax.body)) {
      if (v.sort.name.empty())
        error(ErrorCode::UnsortedTerm, ax.pos,
              "axiom " + ax.label + ": cannot infer the sort of variable '" + v.name + "'",
              v.name);
    }
    bool shape_ok = false;
    const Term& b = ax.body;
    if (b.kind == Term::Kind::Equation) {
      shape_ok = true;
    } else if (b.kind == Term::Kind::Negation) {
      shape_ok = is_observer_app(b.args[0], spec_);
    } else {
      shape_ok = is_observer_app(b, spec_);
    }
    if (!shape_ok)
      error(ErrorCode::UnsupportedAxiomShape, ax.pos,
            "axiom " + ax.label +
                ": body must be an equation or a possibly negated observer application");
    ax.universals = term_variables(ax.body);
  }
}

}  // namespace

std::vector<TypedVar> term_variables(const Term& t, bool with_repeats) {
  std::vector<TypedVar> out;
  collect_vars(t, with_repeats, out);
  return out;
}

std::string to_string(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Variable:
      return t.name;
    case Term::Kind::Application: {
      if (t.args.empty()) return t.name;
      std::string s = t.name + "(";
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) s += ", ";
        s += to_string(t.args[i]);
      }
      return s + ")";
    }
    case Term::Kind::Negation:
      return "not " + to_string(t.args.at(0));
    case Term::Kind::Equation:
      return to_string(t.args.at(0)) + " = " + to_string(t.args.at(1));
  }
  return {};
}

Parsed<AdtSpec> validate_adt(AdtSpec raw) {
  Validator v(raw);
  auto diags = v.run();
  if (!diags.empty()) return diags;
  return raw;
}

}  // namespace ccheck
