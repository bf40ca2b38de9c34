#include <algorithm>
#include <functional>
#include <map>

#include "ccheck/driver.hpp"

namespace ccheck {

std::string_view to_string(DriverFamily f) {
  switch (f) {
    case DriverFamily::Axiom: return "axiom";
    case DriverFamily::Equivalence: return "equivalence";
    case DriverFamily::WellDefinedness: return "well_definedness";
  }
  return "?";
}

int SpecDriver::object_index(std::string_view n) const {
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i].name == n) return int(i);
  return -1;
}

namespace {

bool mentions_is_equal(const Expr& e) {
  if (e.kind == Expr::Kind::IsEqual) return true;
  if (e.kind == Expr::Kind::Member && e.name == "is_equal") return true;
  return std::any_of(e.kids.begin(), e.kids.end(), mentions_is_equal);
}

}  // namespace

bool SpecDriver::uses_is_equal() const {
  return std::any_of(pre.begin(), pre.end(), mentions_is_equal) ||
         std::any_of(post.begin(), post.end(), mentions_is_equal);
}

std::vector<std::pair<int, int>> SpecDriver::distinct_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& e : pre) {
    if (e.kind != Expr::Kind::Neq) continue;
    const Expr& a = e.kids[0];
    const Expr& b = e.kids[1];
    if (a.kind == Expr::Kind::Object && b.kind == Expr::Kind::Object)
      out.emplace_back(int(a.number), int(b.number));
  }
  return out;
}

ExprScope SpecDriver::scope(const ContractClass& cls) const {
  ExprScope s;
  s.cls = &cls;
  s.allow_current = false;
  s.params = params;
  for (const auto& o : objects) s.objects.push_back(o.name);
  return s;
}

void resolve_driver(SpecDriver& d, const ContractClass& cls) {
  const ExprScope scope = d.scope(cls);
  for (auto& e : d.pre) resolve_expr(e, scope, ValueType::Bool);
  for (auto& e : d.post) resolve_expr(e, scope, ValueType::Bool);
  for (auto& c : d.body) {
    if (c.target < 0 || std::size_t(c.target) >= d.objects.size())
      throw Error(ErrorCode::TypeError, "call target out of range in driver " + d.name);
    const Feature* f = cls.find_feature(c.feature);
    if (!f)
      throw Error(ErrorCode::UnmappedFunction,
                  "driver " + d.name + " calls '" + c.feature + "', which class " + cls.name +
                      " does not declare",
                  {}, c.feature);
    if (f->kind != FeatureKind::Command)
      throw Error(ErrorCode::TypeError,
                  "driver " + d.name + " calls query '" + c.feature + "' as a command", {},
                  c.feature);
    if (c.creation && !d.objects[std::size_t(c.target)].created)
      throw Error(ErrorCode::TypeError,
                  "driver " + d.name + " creates '" + d.objects[std::size_t(c.target)].name +
                      "', which is not a local",
                  {}, d.objects[std::size_t(c.target)].name);
    if (c.args.size() != f->params.size())
      throw Error(ErrorCode::TypeError,
                  "driver " + d.name + ": '" + c.feature + "' expects " +
                      std::to_string(f->params.size()) + " argument(s)",
                  {}, c.feature);
    for (std::size_t i = 0; i < c.args.size(); ++i) resolve_expr(c.args[i], scope, f->params[i].type);
  }
}

namespace {

[[noreturn]] void unsupported(const Axiom& ax, const std::string& why) {
  throw Error(ErrorCode::UnsupportedAxiomShape, "axiom " + ax.label + ": " + why, ax.pos, ax.label);
}

const Feature& mapped_feature(const AdtSpec& adt, const ContractClass& cls, const FunctionSig& f) {
  (void)adt;
  const std::string name = cls.feature_for(f.name);
  const Feature* feat = cls.find_feature(name);
  if (!feat)
    throw Error(ErrorCode::UnmappedFunction,
                "ADT function '" + f.name + "' has no feature '" + name + "' in class " + cls.name,
                f.pos, f.name);
  const bool want_query = f.kind == FunctionKind::Observer;
  if ((feat->kind == FeatureKind::Query) != want_query)
    throw Error(ErrorCode::UnmappedFunction,
                "ADT " + std::string(to_string(f.kind)) + " '" + f.name + "' maps to " +
                    (feat->kind == FeatureKind::Query ? "query" : "command") + " '" + name + "'",
                f.pos, f.name);
  return *feat;
}

ValueType param_type(const Sort& s) {
  return s.kind == SortKind::Boolean ? ValueType::Bool : ValueType::Elem;
}

// Translates an ADT term into a driver assertion. `subst` supplies the
// expression for variables and, optionally, for creator applications.
using Subst = std::function<std::optional<Expr>(const Term&)>;

Expr term_to_expr(const Term& t, const AdtSpec& adt, const ContractClass& cls, const Subst& subst,
                  const std::function<void(const std::string&)>& fail) {
  if (auto e = subst(t)) return *e;
  switch (t.kind) {
    case Term::Kind::Variable:
      return Expr::ident(t.name);
    case Term::Kind::Negation:
      return Expr::unary(Expr::Kind::Not, term_to_expr(t.args[0], adt, cls, subst, fail));
    case Term::Kind::Equation: {
      Expr lhs = term_to_expr(t.args[0], adt, cls, subst, fail);
      Expr rhs = term_to_expr(t.args[1], adt, cls, subst, fail);
      if (t.args[0].sort.kind == SortKind::Principal)
        return Expr::member(std::move(lhs), "is_equal", {std::move(rhs)}, true);
      return Expr::binary(Expr::Kind::Eq, std::move(lhs), std::move(rhs));
    }
    case Term::Kind::Application: {
      const FunctionSig* f = adt.find_function(t.name);
      if (!f || f->kind != FunctionKind::Observer) {
        fail("'" + to_string(t) + "' cannot be expressed as an assertion");
      }
      const Feature& feat = mapped_feature(adt, cls, *f);
      Expr recv = term_to_expr(t.args[0], adt, cls, subst, fail);
      std::vector<Expr> args;
      for (std::size_t i = 1; i < t.args.size(); ++i)
        args.push_back(term_to_expr(t.args[i], adt, cls, subst, fail));
      bool parens = !args.empty();
      return Expr::member(std::move(recv), feat.name, std::move(args), parens);
    }
  }
  fail("malformed term");
  return Expr::boolean(false);
}

// Precondition of `fn` instantiated on `object` with the remaining formal
// variables bound to `args`. Empty if `fn` is total.
std::optional<Expr> instantiate_precondition(const AdtSpec& adt, const ContractClass& cls,
                                             const std::string& fn, const std::string& object,
                                             const std::vector<std::string>& args,
                                             const std::function<void(const std::string&)>& fail) {
  const Precondition* p = adt.find_precondition(fn);
  if (!p) return std::nullopt;
  std::map<std::string, std::string> names;
  for (std::size_t i = 0; i < p->formal_vars.size(); ++i) {
    if (i == 0 && p->formal_vars[0].sort.kind == SortKind::Principal)
      names[p->formal_vars[0].name] = object;
    else if (i >= 1 && i - 1 < args.size())
      names[p->formal_vars[i].name] = args[i - 1];
  }
  Subst subst = [&](const Term& t) -> std::optional<Expr> {
    if (t.kind != Term::Kind::Variable) return std::nullopt;
    if (auto it = names.find(t.name); it != names.end()) return Expr::ident(it->second);
    return std::nullopt;
  };
  return term_to_expr(p->condition, adt, cls, subst, fail);
}

// A principal-sorted term read as a chain of calls on one object.
struct Chain {
  std::string leaf_var;
  const Term* creator = nullptr;
  std::vector<const Term*> apps;  // transformer applications, innermost first
};

struct Side {
  enum class Kind { Principal, Observed, Value } kind = Kind::Value;
  Chain chain;
  const Term* observer = nullptr;
  const Term* term = nullptr;
  int object = -1;
};

std::vector<std::string> variable_args(const Term& app, const Axiom& ax) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i < app.args.size(); ++i) {
    const Term& a = app.args[i];
    if (a.kind != Term::Kind::Variable || a.sort.kind == SortKind::Principal)
      unsupported(ax, "argument '" + to_string(a) + "' of '" + app.name +
                          "' must be a variable of a non-principal sort");
    out.push_back(a.name);
  }
  return out;
}

Chain read_chain(const Term& t, const AdtSpec& adt, const Axiom& ax) {
  if (t.kind == Term::Kind::Variable) return Chain{t.name, nullptr, {}};
  if (t.kind != Term::Kind::Application) unsupported(ax, "expected a stack-valued term");
  const FunctionSig* f = adt.find_function(t.name);
  if (!f) unsupported(ax, "unknown function '" + t.name + "'");
  if (f->kind == FunctionKind::Creator) {
    for (const auto& a : t.args)
      if (a.kind != Term::Kind::Variable)
        unsupported(ax, "creator arguments must be variables");
    return Chain{{}, &t, {}};
  }
  if (f->kind != FunctionKind::Transformer) unsupported(ax, "'" + t.name + "' is not a transformer");
  Chain c = read_chain(t.args[0], adt, ax);
  variable_args(t, ax);
  c.apps.push_back(&t);
  return c;
}

Side read_side(const Term& t, const AdtSpec& adt, const Axiom& ax) {
  Side s;
  s.term = &t;
  if (t.sort.kind == SortKind::Principal) {
    s.kind = Side::Kind::Principal;
    s.chain = read_chain(t, adt, ax);
    return s;
  }
  if (t.kind == Term::Kind::Application) {
    const FunctionSig* f = adt.find_function(t.name);
    if (!f || f->kind != FunctionKind::Observer)
      unsupported(ax, "'" + to_string(t) + "' is not an observer application");
    s.kind = Side::Kind::Observed;
    s.observer = &t;
    s.chain = read_chain(t.args[0], adt, ax);
    variable_args(t, ax);
    return s;
  }
  if (t.kind == Term::Kind::Variable) {
    s.kind = Side::Kind::Value;
    return s;
  }
  unsupported(ax, "'" + to_string(t) + "' is not a supported equation side");
}

void reject_nonlinear(const Term& side, const Axiom& ax) {
  auto vars = term_variables(side, true);
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i].name == vars[j].name)
        unsupported(ax, "variable '" + vars[i].name + "' occurs more than once in '" +
                            to_string(side) + "'");
}

std::vector<std::string> app_arg_names(const Term& app) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i < app.args.size(); ++i) out.push_back(app.args[i].name);
  return out;
}

void push_unique(std::vector<Expr>& list, Expr e) {
  if (std::find(list.begin(), list.end(), e) == list.end()) list.push_back(std::move(e));
}

}  // namespace

SpecDriver translate_axiom(const Axiom& ax, const AdtSpec& adt, const ContractClass& cls) {
  auto fail = [&](const std::string& why) { unsupported(ax, why); };

  SpecDriver d;
  d.name = "axiom_" + ax.label;
  d.family = DriverFamily::Axiom;
  d.origin = ax.label;
  d.object_type = adt.principal().name;
  d.element_type = adt.parameter;

  // Sides and the shape of the final assertion.
  const Term& body = ax.body;
  std::vector<Side> sides;
  enum class Post { ObjectsEqual, ValuesEqual, Holds, Negated } post_kind;
  if (body.kind == Term::Kind::Equation) {
    reject_nonlinear(body.args[0], ax);
    reject_nonlinear(body.args[1], ax);
    sides.push_back(read_side(body.args[0], adt, ax));
    sides.push_back(read_side(body.args[1], adt, ax));
    post_kind = sides[0].kind == Side::Kind::Principal ? Post::ObjectsEqual : Post::ValuesEqual;
  } else if (body.kind == Term::Kind::Negation) {
    reject_nonlinear(body, ax);
    sides.push_back(read_side(body.args[0], adt, ax));
    if (sides[0].kind != Side::Kind::Observed) fail("only observer applications may be negated");
    post_kind = Post::Negated;
  } else {
    reject_nonlinear(body, ax);
    sides.push_back(read_side(body, adt, ax));
    if (sides[0].kind != Side::Kind::Observed) fail("expected an observer application");
    post_kind = Post::Holds;
  }

  // Objects: one per chain, except that two empty chains on the same
  // variable denote the same object.
  std::map<std::string, std::vector<std::size_t>> by_var;
  std::size_t created = 0;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    if (sides[i].kind == Side::Kind::Value) continue;
    if (sides[i].chain.creator)
      ++created;
    else
      by_var[sides[i].chain.leaf_var].push_back(i);
  }
  std::vector<std::pair<std::string, std::string>> linked;
  auto taken = [&](const std::string& n) {
    return d.object_index(n) >= 0 ||
           std::any_of(ax.universals.begin(), ax.universals.end(),
                       [&](const TypedVar& v) { return v.name == n && v.sort.kind != SortKind::Principal; });
  };
  auto fresh = [&](std::string base) {
    while (taken(base)) base += "_";
    return base;
  };
  std::size_t created_seen = 0;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    Side& s = sides[i];
    if (s.kind == Side::Kind::Value) continue;
    if (s.chain.creator) {
      ++created_seen;
      std::string n = fresh(created == 1 ? "r" : "r" + std::to_string(created_seen));
      s.object = int(d.objects.size());
      d.objects.push_back({n, true});
      continue;
    }
    const auto& users = by_var[s.chain.leaf_var];
    bool shared = users.size() == 2 &&
                  std::all_of(users.begin(), users.end(),
                              [&](std::size_t u) { return sides[u].chain.apps.empty(); });
    if (users.size() == 1 || shared) {
      if (shared && users[0] != i) {
        s.object = sides[users[0]].object;
        continue;
      }
      s.object = int(d.objects.size());
      d.objects.push_back({s.chain.leaf_var, false});
      continue;
    }
    std::size_t nth = users[0] == i ? 1 : 2;
    s.object = int(d.objects.size());
    d.objects.push_back({s.chain.leaf_var + std::to_string(nth), false});
    if (nth == 2) linked.emplace_back(d.objects[std::size_t(sides[users[0]].object)].name,
                                      d.objects.back().name);
  }

  for (const auto& v : ax.universals)
    if (v.sort.kind != SortKind::Principal) d.params.push_back({v.name, param_type(v.sort)});

  // Preconditions of the first function applied to each quantified object.
  for (const auto& s : sides) {
    if (s.kind == Side::Kind::Value || s.chain.creator) continue;
    const Term* first = !s.chain.apps.empty() ? s.chain.apps.front() : s.observer;
    if (!first) continue;
    const std::string& obj = d.objects[std::size_t(s.object)].name;
    if (auto e = instantiate_precondition(adt, cls, first->name, obj, app_arg_names(*first), fail))
      push_unique(d.pre, std::move(*e));
  }
  for (const auto& [a, b] : linked)
    d.pre.push_back(Expr::member(Expr::ident(a), "is_equal", {Expr::ident(b)}, true));

  // Body: each chain compiled innermost-first onto its object.
  for (const auto& s : sides) {
    if (s.kind == Side::Kind::Value) continue;
    if (s.chain.creator) {
      const FunctionSig* f = adt.find_function(s.chain.creator->name);
      Call c;
      c.target = s.object;
      c.feature = mapped_feature(adt, cls, *f).name;
      c.creation = true;
      for (const auto& a : s.chain.creator->args) c.args.push_back(Expr::ident(a.name));
      d.body.push_back(std::move(c));
    }
    for (const Term* app : s.chain.apps) {
      const FunctionSig* f = adt.find_function(app->name);
      Call c;
      c.target = s.object;
      c.feature = mapped_feature(adt, cls, *f).name;
      for (const auto& a : app_arg_names(*app)) c.args.push_back(Expr::ident(a));
      d.body.push_back(std::move(c));
    }
  }

  auto side_expr = [&](const Side& s) -> Expr {
    if (s.kind == Side::Kind::Value) return Expr::ident(s.term->name);
    Expr obj = Expr::ident(d.objects[std::size_t(s.object)].name);
    if (s.kind == Side::Kind::Principal) return obj;
    const FunctionSig* f = adt.find_function(s.observer->name);
    std::vector<Expr> args;
    for (const auto& a : app_arg_names(*s.observer)) args.push_back(Expr::ident(a));
    bool parens = !args.empty();
    return Expr::member(std::move(obj), mapped_feature(adt, cls, *f).name, std::move(args), parens);
  };
  switch (post_kind) {
    case Post::ObjectsEqual:
      d.post.push_back(Expr::member(side_expr(sides[0]), "is_equal", {side_expr(sides[1])}, true));
      break;
    case Post::ValuesEqual:
      d.post.push_back(Expr::binary(Expr::Kind::Eq, side_expr(sides[0]), side_expr(sides[1])));
      break;
    case Post::Holds:
      d.post.push_back(side_expr(sides[0]));
      break;
    case Post::Negated:
      d.post.push_back(Expr::unary(Expr::Kind::Not, side_expr(sides[0])));
      break;
  }

  resolve_driver(d, cls);
  return d;
}

DriverSet gen_axiom_drivers(const AdtSpec& adt, const ContractClass& cls) {
  DriverSet out;
  for (const auto& ax : adt.axioms) out.push_back(translate_axiom(ax, adt, cls));
  return out;
}

namespace {

SpecDriver skeleton(std::string name, DriverFamily fam, std::string origin, const AdtSpec& adt,
                    std::vector<std::string> objects) {
  SpecDriver d;
  d.name = std::move(name);
  d.family = fam;
  d.origin = std::move(origin);
  d.object_type = adt.principal().name;
  d.element_type = adt.parameter;
  for (auto& o : objects) d.objects.push_back({std::move(o), false});
  return d;
}

Expr is_equal(const std::string& a, const std::string& b) {
  return Expr::member(Expr::ident(a), "is_equal", {Expr::ident(b)}, true);
}

Expr distinct(const std::string& a, const std::string& b) {
  return Expr::binary(Expr::Kind::Neq, Expr::ident(a), Expr::ident(b));
}

}  // namespace

DriverSet equivalence_templates(const AdtSpec& adt, const ContractClass& cls) {
  DriverSet out;
  auto refl = skeleton("equivalence_reflexivity", DriverFamily::Equivalence, "reflexivity", adt, {"s"});
  refl.post.push_back(is_equal("s", "s"));
  out.push_back(std::move(refl));

  auto sym = skeleton("equivalence_symmetry", DriverFamily::Equivalence, "symmetry", adt, {"s1", "s2"});
  sym.pre.push_back(is_equal("s1", "s2"));
  sym.post.push_back(is_equal("s2", "s1"));
  out.push_back(std::move(sym));

  auto trans = skeleton("equivalence_transitivity", DriverFamily::Equivalence, "transitivity", adt,
                        {"s1", "s2", "s3"});
  trans.pre.push_back(is_equal("s1", "s2"));
  trans.pre.push_back(is_equal("s2", "s3"));
  trans.post.push_back(is_equal("s1", "s3"));
  out.push_back(std::move(trans));

  for (auto& d : out) resolve_driver(d, cls);
  return out;
}

DriverSet gen_equivalence_drivers(const AdtSpec& adt, const ContractClass& cls,
                                  const DriverSet& axiom_drivers, bool force) {
  bool needed = std::any_of(axiom_drivers.begin(), axiom_drivers.end(),
                            [](const SpecDriver& d) { return d.uses_is_equal(); });
  if (!needed && !force) return {};
  return equivalence_templates(adt, cls);
}

namespace {

// Axioms stating a property of a bare creator application, e.g.
// is_empty(new): they characterize every object the creator produces.
std::vector<const Axiom*> creation_axioms(const AdtSpec& adt, const FunctionSig& creator) {
  auto direct = [&](const Term& t) {
    if (t.kind != Term::Kind::Application || t.args.size() != 1) return false;
    const FunctionSig* f = adt.find_function(t.name);
    if (!f || f->kind != FunctionKind::Observer) return false;
    const Term& arg = t.args[0];
    return arg.kind == Term::Kind::Application && arg.name == creator.name && arg.args.empty();
  };
  std::vector<const Axiom*> out;
  for (const auto& ax : adt.axioms) {
    const Term& b = ax.body;
    bool ok = false;
    if (b.kind == Term::Kind::Negation)
      ok = direct(b.args[0]);
    else if (b.kind == Term::Kind::Equation)
      ok = direct(b.args[0]) && direct(b.args[1]);
    else
      ok = direct(b);
    if (ok) out.push_back(&ax);
  }
  return out;
}

std::vector<Param> call_params(const Feature& feat, const FunctionSig& f) {
  std::vector<Param> out;
  for (std::size_t i = 1; i < f.arg_sorts.size() || (f.kind == FunctionKind::Creator && i - 1 < f.arg_sorts.size()); ++i) {
    std::size_t pos = f.kind == FunctionKind::Creator ? i - 1 : i;
    if (pos >= f.arg_sorts.size()) break;
    std::size_t idx = out.size();
    std::string name = idx < feat.params.size() ? feat.params[idx].name : "x" + std::to_string(idx + 1);
    out.push_back({name, param_type(f.arg_sorts[pos])});
  }
  return out;
}

}  // namespace

DriverSet gen_well_definedness_drivers(const AdtSpec& adt, const ContractClass& cls) {
  DriverSet out;
  for (const auto& f : adt.functions) {
    const Feature& feat = mapped_feature(adt, cls, f);
    const std::string name = feat.name + "_is_well_defined";
    auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::UnsupportedAxiomShape, "precondition of " + f.name + ": " + why, f.pos, f.name);
    };
    SpecDriver d = skeleton(name, DriverFamily::WellDefinedness, feat.name, adt, {"s1", "s2"});
    std::vector<Param> params = call_params(feat, f);
    std::vector<std::string> arg_names;
    for (const auto& p : params) arg_names.push_back(p.name);

    if (f.kind == FunctionKind::Creator) {
      auto axioms = creation_axioms(adt, f);
      if (!axioms.empty() && f.arg_sorts.empty()) {
        // Every pair of objects satisfying the creation properties must be equal.
        for (const char* obj : {"s1", "s2"}) {
          Subst subst = [&](const Term& t) -> std::optional<Expr> {
            if (t.kind == Term::Kind::Application && t.name == f.name) return Expr::ident(obj);
            return std::nullopt;
          };
          for (const Axiom* ax : axioms) push_unique(d.pre, term_to_expr(ax->body, adt, cls, subst, fail));
        }
        d.pre.push_back(distinct("s1", "s2"));
      } else {
        d.objects[0].created = d.objects[1].created = true;
        d.params = params;
        for (int target : {0, 1}) {
          Call c;
          c.target = target;
          c.feature = feat.name;
          c.creation = true;
          for (const auto& a : arg_names) c.args.push_back(Expr::ident(a));
          d.body.push_back(std::move(c));
        }
      }
      d.post.push_back(is_equal("s1", "s2"));
    } else {
      d.params = params;
      for (const char* obj : {"s1", "s2"})
        if (auto e = instantiate_precondition(adt, cls, f.name, obj, arg_names, fail))
          d.pre.push_back(std::move(*e));
      d.pre.push_back(is_equal("s1", "s2"));
      d.pre.push_back(distinct("s1", "s2"));
      if (f.kind == FunctionKind::Observer) {
        auto read = [&](const char* obj) {
          std::vector<Expr> args;
          for (const auto& a : arg_names) args.push_back(Expr::ident(a));
          bool parens = !args.empty();
          return Expr::member(Expr::ident(obj), feat.name, std::move(args), parens);
        };
        d.post.push_back(Expr::binary(Expr::Kind::Eq, read("s1"), read("s2")));
      } else {
        for (int target : {0, 1}) {
          Call c;
          c.target = target;
          c.feature = feat.name;
          for (const auto& a : arg_names) c.args.push_back(Expr::ident(a));
          d.body.push_back(std::move(c));
        }
        d.post.push_back(is_equal("s1", "s2"));
      }
    }
    resolve_driver(d, cls);
    out.push_back(std::move(d));
  }
  return out;
}

DriverSet DriverSuite::all() const {
  DriverSet out = axioms;
  out.insert(out.end(), equivalence.begin(), equivalence.end());
  out.insert(out.end(), well_definedness.begin(), well_definedness.end());
  return out;
}

DriverSuite generate_drivers(const AdtSpec& adt, const ContractClass& cls) {
  DriverSuite s;
  s.axioms = gen_axiom_drivers(adt, cls);
  s.equivalence_required = std::any_of(s.axioms.begin(), s.axioms.end(),
                                       [](const SpecDriver& d) { return d.uses_is_equal(); });
  s.equivalence = equivalence_templates(adt, cls);
  s.well_definedness = gen_well_definedness_drivers(adt, cls);
  return s;
}

}  // namespace ccheck
