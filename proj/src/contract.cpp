#include <algorithm>
#include <map>
#include <set>

#include "ccheck/contract.hpp"

namespace ccheck {

const Feature* ContractClass::find_feature(std::string_view fname) const {
  for (const auto& f : features)
    if (f.name == fname) return &f;
  return nullptr;
}

int ContractClass::feature_index(std::string_view fname) const {
  for (std::size_t i = 0; i < features.size(); ++i)
    if (features[i].name == fname) return int(i);
  return -1;
}

std::vector<Component> ContractClass::components() const {
  std::vector<Component> out;
  for (const auto& m : model_fields) out.push_back({m.name, ValueType::Seq, true, -1});
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (features[i].kind == FeatureKind::Query)
      out.push_back({features[i].name, features[i].result_type, false, int(i)});
  }
  return out;
}

int ContractClass::slot_of(std::string_view cname) const {
  int slot = 0;
  for (const auto& m : model_fields) {
    if (m.name == cname) return slot;
    ++slot;
  }
  for (const auto& f : features) {
    if (f.kind != FeatureKind::Query) continue;
    if (f.name == cname) return slot;
    ++slot;
  }
  return -1;
}

std::string ContractClass::feature_for(std::string_view adt_fn) const {
  for (const auto& m : mapping)
    if (m.adt_function == adt_fn) return m.feature;
  return std::string(adt_fn);
}

Diagnostics validate_contract(ContractClass& cls) {
  Diagnostics diags;
  auto error = [&](ErrorCode code, SourcePos pos, std::string msg, std::string tok = {}) {
    diags.push_back({"", pos, Severity::Error, code, std::move(msg), std::move(tok)});
  };

  std::set<std::string> names;
  for (const auto& m : cls.model_fields)
    if (!names.insert(m.name).second)
      error(ErrorCode::DuplicateName, {}, "duplicate model field '" + m.name + "'", m.name);
  for (const auto& f : cls.features) {
    if (!names.insert(f.name).second)
      error(ErrorCode::DuplicateName, f.pos, "duplicate feature '" + f.name + "'", f.name);
    if (f.kind == FeatureKind::Query && !f.params.empty())
      error(ErrorCode::TypeError, f.pos,
            "query '" + f.name + "' takes arguments; only argument-free queries are supported",
            f.name);
    if (f.kind == FeatureKind::Query && f.result_type != ValueType::Elem &&
        f.result_type != ValueType::Bool)
      error(ErrorCode::TypeError, f.pos,
            "query '" + f.name + "' must return the element sort or BOOLEAN", f.name);
    std::set<std::string> labels;
    for (const auto* list : {&f.require, &f.ensure})
      for (const auto& c : *list)
        if (!c.label.empty() && !labels.insert(c.label).second)
          error(ErrorCode::DuplicateName, c.expr.pos,
                "duplicate label '" + c.label + "' in feature '" + f.name + "'", c.label);
  }
  if (cls.components().size() > 63)
    error(ErrorCode::TypeError, {}, "too many state components (limit 63)");

  const Feature* creator = cls.find_feature(cls.creation_feature);
  if (cls.creation_feature.empty())
    error(ErrorCode::SyntaxError, {}, "missing 'create' declaration");
  else if (!creator)
    error(ErrorCode::UnknownComponent, {},
          "creation feature '" + cls.creation_feature + "' is not declared", cls.creation_feature);
  else if (creator->kind != FeatureKind::Command)
    error(ErrorCode::TypeError, creator->pos,
          "creation feature '" + cls.creation_feature + "' must be a command",
          cls.creation_feature);

  for (const auto& m : cls.mapping)
    if (!cls.find_feature(m.feature))
      error(ErrorCode::UnknownComponent, {},
            "mapping of '" + m.adt_function + "' names unknown feature '" + m.feature + "'",
            m.feature);

  if (!diags.empty()) return diags;

  auto check = [&](Expr& e, const ExprScope& scope) {
    try {
      resolve_expr(e, scope, ValueType::Bool);
    } catch (const Error& err) {
      diags.push_back(err.to_diagnostic());
    }
  };
  for (auto& f : cls.features) {
    ExprScope pre{&cls, false, std::nullopt, true, false, f.params, {}};
    for (auto& c : f.require) check(c.expr, pre);
    ExprScope post = pre;
    post.allow_old = true;
    if (f.kind == FeatureKind::Query) post.result = f.result_type;
    for (auto& c : f.ensure) check(c.expr, post);
  }
  if (cls.equality) {
    ExprScope eq{&cls, false, std::nullopt, true, true, {}, {}};
    check(*cls.equality, eq);
  }
  return diags;
}

bool operator<(const ObjectState& a, const ObjectState& b) {
  if (a.slots != b.slots)
    return std::lexicographical_compare(a.slots.begin(), a.slots.end(), b.slots.begin(),
                                        b.slots.end());
  return a.masked < b.masked;
}

std::string to_string(const ObjectState& s, const ContractClass& cls) {
  auto comps = cls.components();
  std::string out = "{";
  for (std::size_t i = 0; i < s.slots.size(); ++i) {
    if (i) out += ", ";
    out += (i < comps.size() ? comps[i].name : "?") + "=";
    out += s.is_masked(int(i)) ? "?" : to_string(s.slots[i]);
  }
  return out + "}";
}

bool equality_holds(const ContractClass& cls, const ObjectState& a, const ObjectState& b) {
  if (!cls.equality) return a == b;
  const ObjectState* states[] = {&a, &b};
  EvalContext ctx;
  ctx.cls = &cls;
  ctx.now = states;
  ctx.before = states;
  ctx.current = 0;
  ctx.other = 1;
  return holds(*cls.equality, ctx);
}

namespace {

Value canonical(ValueType t) {
  return t == ValueType::Bool ? Value::boolean(false) : Value::element(0);
}

bool preconditions_hold(const Feature& f, const ContractClass& cls, const ObjectState& s) {
  const ObjectState* states[] = {&s};
  EvalContext ctx;
  ctx.cls = &cls;
  ctx.now = states;
  ctx.before = states;
  ctx.current = 0;
  for (const auto& c : f.require)
    if (!holds(c.expr, ctx)) return false;
  return true;
}

}  // namespace

void normalize_state(const ContractClass& cls, ObjectState& s) {
  const auto comps = cls.components();
  for (std::size_t round = 0; round <= comps.size(); ++round) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (comps[i].is_model) continue;
      if (!preconditions_hold(cls.features[std::size_t(comps[i].feature)], cls, s))
        mask |= std::uint64_t(1) << i;
    }
    for (std::size_t i = 0; i < comps.size(); ++i)
      if ((mask >> i) & 1u) s.slots[i] = canonical(comps[i].type);
    if (mask == s.masked) return;
    s.masked = mask;
  }
}

bool satisfies_definitions(const ContractClass& cls, const ObjectState& s) {
  const auto comps = cls.components();
  const ObjectState* states[] = {&s};
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].is_model || s.is_masked(int(i))) continue;
    const Feature& q = cls.features[std::size_t(comps[i].feature)];
    EvalContext ctx;
    ctx.cls = &cls;
    ctx.now = states;
    ctx.before = states;
    ctx.current = 0;
    ctx.result = &s.slots[i];
    for (const auto& c : q.ensure)
      if (!holds(c.expr, ctx)) return false;
  }
  return true;
}

bool within_bounds(const ObjectState& s, const ContractClass& cls, Bounds bounds) {
  const auto comps = cls.components();
  if (s.slots.size() != comps.size()) return false;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const Value& v = s.slots[i];
    switch (comps[i].type) {
      case ValueType::Seq:
        if (v.kind != Value::Kind::Seq || int(v.seq.size()) > bounds.len) return false;
        for (int e : v.seq)
          if (e < 0 || e >= bounds.k) return false;
        break;
      case ValueType::Elem:
        if (v.kind != Value::Kind::Elem || v.scalar < 0 || v.scalar >= bounds.k) return false;
        break;
      case ValueType::Bool:
        if (v.kind != Value::Kind::Bool) return false;
        break;
      default:
        return false;
    }
  }
  return true;
}

int StateSpace::index_of(const ObjectState& s) const {
  auto it = std::lower_bound(states.begin(), states.end(), s);
  if (it == states.end() || !(*it == s)) return -1;
  return int(it - states.begin());
}

namespace {

std::vector<Value> all_sequences(int k, int len) {
  std::vector<Value> out{Value::sequence({})};
  std::vector<std::vector<int>> layer{{}};
  for (int n = 1; n <= len; ++n) {
    std::vector<std::vector<int>> next;
    for (const auto& prefix : layer) {
      for (int e = 0; e < k; ++e) {
        auto s = prefix;
        s.push_back(e);
        next.push_back(std::move(s));
      }
    }
    for (const auto& s : next) out.push_back(Value::sequence(s));
    layer = std::move(next);
  }
  return out;
}

}  // namespace

StateSpace state_space(const ContractClass& cls, Bounds bounds) {
  if (bounds.k < 1 || bounds.len < 0)
    throw Error(ErrorCode::EmptyStateSpace, "bounds must satisfy k >= 1 and len >= 0");
  const auto comps = cls.components();
  std::vector<std::vector<Value>> domains;
  for (const auto& c : comps) {
    switch (c.type) {
      case ValueType::Seq: domains.push_back(all_sequences(bounds.k, bounds.len)); break;
      case ValueType::Bool: domains.push_back({Value::boolean(false), Value::boolean(true)}); break;
      default: {
        std::vector<Value> d;
        for (int e = 0; e < bounds.k; ++e) d.push_back(Value::element(e));
        domains.push_back(std::move(d));
      }
    }
  }

  std::set<ObjectState> admissible;
  std::vector<std::size_t> digit(comps.size(), 0);
  while (true) {
    ObjectState s;
    for (std::size_t i = 0; i < comps.size(); ++i) s.slots.push_back(domains[i][digit[i]]);
    normalize_state(cls, s);
    if (satisfies_definitions(cls, s)) admissible.insert(std::move(s));
    std::size_t i = 0;
    for (; i < digit.size(); ++i) {
      if (++digit[i] < domains[i].size()) break;
      digit[i] = 0;
    }
    if (i == digit.size()) break;
  }
  if (admissible.empty())
    throw Error(ErrorCode::EmptyStateSpace,
                "no abstract state of class " + cls.name +
                    " satisfies its query definitions within k=" + std::to_string(bounds.k) +
                    ", len=" + std::to_string(bounds.len));

  StateSpace space;
  space.cls = &cls;
  space.bounds = bounds;
  space.states.assign(admissible.begin(), admissible.end());
  for (std::size_t i = 0; i < space.states.size(); ++i) space.states[i].id = int(i);

  std::map<std::vector<Value>, int> keys;
  const std::size_t nmodel = cls.model_fields.size();
  for (const auto& s : space.states) {
    if (nmodel == 0) {
      space.model_key.push_back(-1);
      continue;
    }
    std::vector<Value> proj(s.slots.begin(), s.slots.begin() + std::ptrdiff_t(nmodel));
    auto [it, fresh] = keys.emplace(std::move(proj), int(keys.size()));
    space.model_key.push_back(it->second);
  }

  const std::size_t n = space.states.size();
  space.equal.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      space.equal[a * n + b] = equality_holds(cls, space.states[a], space.states[b]) ? 1 : 0;
  return space;
}

}  // namespace ccheck
