#include <algorithm>
#include <sstream>

#include "ccheck/contract.hpp"

namespace ccheck {

std::string_view to_string(ValueType t) {
  switch (t) {
    case ValueType::Bool: return "BOOLEAN";
    case ValueType::Elem: return "element";
    case ValueType::Int: return "INTEGER";
    case ValueType::Seq: return "SEQ";
    case ValueType::Object: return "object";
  }
  return "?";
}

bool operator<(const Value& a, const Value& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.kind == Value::Kind::Seq) {
    if (a.seq.size() != b.seq.size()) return a.seq.size() < b.seq.size();
    return a.seq < b.seq;
  }
  return a.scalar < b.scalar;
}

std::string to_string(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Undefined: return "undefined";
    case Value::Kind::Bool: return v.scalar ? "True" : "False";
    case Value::Kind::Elem: return "e" + std::to_string(v.scalar);
    case Value::Kind::Int: return std::to_string(v.scalar);
    case Value::Kind::Object: return "#" + std::to_string(v.scalar);
    case Value::Kind::Seq: {
      std::string s = "[";
      for (std::size_t i = 0; i < v.seq.size(); ++i) {
        if (i) s += ", ";
        s += "e" + std::to_string(v.seq[i]);
      }
      return s + "]";
    }
  }
  return "?";
}

Expr Expr::boolean(bool b) {
  Expr e;
  e.kind = Kind::BoolLit;
  e.number = b ? 1 : 0;
  return e;
}

Expr Expr::ident(std::string name, SourcePos pos) {
  Expr e;
  e.kind = Kind::Ident;
  e.name = std::move(name);
  e.pos = pos;
  return e;
}

Expr Expr::member(Expr receiver, std::string name, std::vector<Expr> args, bool with_parens,
                  SourcePos pos) {
  Expr e;
  e.kind = Kind::Member;
  e.name = std::move(name);
  e.flag = with_parens;
  e.pos = pos;
  e.kids.push_back(std::move(receiver));
  for (auto& a : args) e.kids.push_back(std::move(a));
  return e;
}

Expr Expr::unary(Kind k, Expr inner, SourcePos pos) {
  Expr e;
  e.kind = k;
  e.pos = pos;
  e.kids.push_back(std::move(inner));
  return e;
}

Expr Expr::binary(Kind k, Expr a, Expr b, SourcePos pos) {
  Expr e;
  e.kind = k;
  e.pos = pos;
  e.kids.push_back(std::move(a));
  e.kids.push_back(std::move(b));
  return e;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

enum Prec { kImplies = 1, kOr, kAnd, kNot, kCompare, kOld, kPostfix };

int precedence(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Implies: return kImplies;
    case K::Or: return kOr;
    case K::And: return kAnd;
    case K::Not: return kNot;
    case K::Eq: case K::Neq: case K::Lt: case K::Le: case K::Gt: case K::Ge:
      return kCompare;
    case K::Old: return kOld;
    default: return kPostfix;
  }
}

void print(const Expr& e, std::ostream& out);

void print_at(const Expr& e, int min_prec, std::ostream& out) {
  if (precedence(e) < min_prec) {
    out << '(';
    print(e, out);
    out << ')';
  } else {
    print(e, out);
  }
}

const char* op_text(Expr::Kind k, bool flag) {
  using K = Expr::Kind;
  switch (k) {
    case K::Implies: return " implies ";
    case K::Or: return flag ? " or else " : " or ";
    case K::And: return flag ? " and then " : " and ";
    case K::Eq: return " = ";
    case K::Neq: return " /= ";
    case K::Lt: return " < ";
    case K::Le: return " <= ";
    case K::Gt: return " > ";
    case K::Ge: return " >= ";
    default: return " ? ";
  }
}

void print(const Expr& e, std::ostream& out) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Ident: case K::Param: case K::Object: case K::Bound:
      out << e.name;
      return;
    case K::BoolLit: out << (e.number ? "True" : "False"); return;
    case K::IntLit: out << e.number; return;
    case K::ElemLit: out << 'e' << e.number; return;
    case K::Current: out << "Current"; return;
    case K::Other: out << "other"; return;
    case K::Result: out << "Result"; return;
    case K::Component:
      if (!e.flag) {
        print_at(e.kids[0], kPostfix, out);
        out << '.';
      }
      out << e.name;
      return;
    case K::Member:
      print_at(e.kids[0], kPostfix, out);
      out << '.' << e.name;
      if (e.flag) {
        out << '(';
        for (std::size_t i = 1; i < e.kids.size(); ++i) {
          if (i > 1) out << ", ";
          print(e.kids[i], out);
        }
        out << ')';
      }
      return;
    case K::Old:
      out << "old ";
      print_at(e.kids[0], kPostfix, out);
      return;
    case K::Not:
      out << "not ";
      print_at(e.kids[0], kNot, out);
      return;
    case K::And: case K::Or:
      print_at(e.kids[0], precedence(e), out);
      out << op_text(e.kind, e.flag);
      print_at(e.kids[1], precedence(e) + 1, out);
      return;
    case K::Implies:
      print_at(e.kids[0], kImplies + 1, out);
      out << op_text(e.kind, false);
      print_at(e.kids[1], kImplies, out);
      return;
    case K::Eq: case K::Neq: case K::Lt: case K::Le: case K::Gt: case K::Ge:
      print_at(e.kids[0], kCompare + 1, out);
      out << op_text(e.kind, false);
      print_at(e.kids[1], kCompare + 1, out);
      return;
    case K::IsEqual:
      print_at(e.kids[0], kPostfix, out);
      out << ".is_equal(";
      print(e.kids[1], out);
      out << ')';
      return;
    case K::Extended:
      print_at(e.kids[0], kPostfix, out);
      out << ".extended(";
      print(e.kids[1], out);
      out << ')';
      return;
    case K::ButLast: print_at(e.kids[0], kPostfix, out); out << ".but_last"; return;
    case K::Last: print_at(e.kids[0], kPostfix, out); out << ".last"; return;
    case K::First: print_at(e.kids[0], kPostfix, out); out << ".first"; return;
    case K::SeqIsEmpty: print_at(e.kids[0], kPostfix, out); out << ".is_empty"; return;
    case K::Count: print_at(e.kids[0], kPostfix, out); out << ".count"; return;
    case K::Index:
      print_at(e.kids[0], kPostfix, out);
      out << '[';
      print(e.kids[1], out);
      out << ']';
      return;
    case K::Across:
      out << "across ";
      print(e.kids[0], out);
      out << " .. ";
      print(e.kids[1], out);
      if (e.flag) out << " as " << e.name;
      out << " all ";
      print(e.kids[2], out);
      out << " end";
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream out;
  print(e, out);
  return out.str();
}

// ---------------------------------------------------------------------------
// Resolution

namespace {

class Resolver {
 public:
  explicit Resolver(const ExprScope& scope) : scope_(scope) {}

  void resolve(Expr& e, std::optional<ValueType> expected);

 private:
  [[noreturn]] void fail(ErrorCode code, const Expr& e, const std::string& msg) {
    throw Error(code, msg, e.pos, e.name);
  }

  void expect(Expr& e, ValueType t) { resolve(e, t); }

  void resolve_ident(Expr& e);
  void resolve_member(Expr& e);
  bool in_old_ = false;
  const ExprScope& scope_;
  std::vector<std::string> binders_;
};

void Resolver::resolve_ident(Expr& e) {
  const std::string name = e.name;
  for (std::size_t i = binders_.size(); i-- > 0;) {
    if (binders_[i] == name) {
      e = Expr{Expr::Kind::Bound, name, std::int64_t(i), ValueType::Int, false, {}, e.pos};
      return;
    }
  }
  for (std::size_t i = 0; i < scope_.params.size(); ++i) {
    if (scope_.params[i].name == name) {
      e = Expr{Expr::Kind::Param, name, std::int64_t(i), scope_.params[i].type, false, {}, e.pos};
      return;
    }
  }
  for (std::size_t i = 0; i < scope_.objects.size(); ++i) {
    if (scope_.objects[i] == name) {
      e = Expr{Expr::Kind::Object, name, std::int64_t(i), ValueType::Object, false, {}, e.pos};
      return;
    }
  }
  if (scope_.allow_current && scope_.cls) {
    int slot = scope_.cls->slot_of(name);
    if (slot >= 0) {
      auto comps = scope_.cls->components();
      Expr cur;
      cur.kind = Expr::Kind::Current;
      cur.type = ValueType::Object;
      cur.pos = e.pos;
      SourcePos pos = e.pos;
      e = Expr{Expr::Kind::Component, name, slot, comps[slot].type, true, {std::move(cur)}, pos};
      return;
    }
    if (scope_.cls->find_feature(name))
      fail(ErrorCode::TypeError, e, "command '" + name + "' cannot be used in an expression");
  }
  fail(ErrorCode::UnknownComponent, e, "unknown name '" + name + "'");
}

void Resolver::resolve_member(Expr& e) {
  Expr& recv = e.kids[0];
  resolve(recv, std::nullopt);
  const std::string name = e.name;
  const std::size_t nargs = e.kids.size() - 1;
  auto make = [&](Expr::Kind k, ValueType t) {
    e.kind = k;
    e.type = t;
    e.flag = false;
  };
  auto want_args = [&](std::size_t n) {
    if (nargs != n)
      fail(ErrorCode::TypeError, e,
           "'" + name + "' expects " + std::to_string(n) + " argument(s)");
  };

  if (recv.type == ValueType::Object) {
    if (name == "is_equal") {
      want_args(1);
      expect(e.kids[1], ValueType::Object);
      make(Expr::Kind::IsEqual, ValueType::Bool);
      e.name.clear();
      return;
    }
    int slot = scope_.cls ? scope_.cls->slot_of(name) : -1;
    if (slot < 0) {
      if (scope_.cls && scope_.cls->find_feature(name))
        fail(ErrorCode::TypeError, e, "command '" + name + "' cannot be used in an expression");
      fail(ErrorCode::UnknownComponent, e, "unknown component '" + name + "'");
    }
    if (e.flag && nargs == 0) e.flag = false;
    want_args(0);
    e.number = slot;
    make(Expr::Kind::Component, scope_.cls->components()[slot].type);
    return;
  }
  if (recv.type == ValueType::Seq) {
    if (name == "extended") {
      want_args(1);
      expect(e.kids[1], ValueType::Elem);
      make(Expr::Kind::Extended, ValueType::Seq);
    } else if (name == "but_last") {
      want_args(0);
      make(Expr::Kind::ButLast, ValueType::Seq);
    } else if (name == "last") {
      want_args(0);
      make(Expr::Kind::Last, ValueType::Elem);
    } else if (name == "first") {
      want_args(0);
      make(Expr::Kind::First, ValueType::Elem);
    } else if (name == "is_empty") {
      want_args(0);
      make(Expr::Kind::SeqIsEmpty, ValueType::Bool);
    } else if (name == "count") {
      want_args(0);
      make(Expr::Kind::Count, ValueType::Int);
    } else {
      fail(ErrorCode::TypeError, e, "unknown sequence operation '" + name + "'");
    }
    e.name.clear();
    return;
  }
  fail(ErrorCode::TypeError, e,
       "'" + name + "' applied to a value of type " + std::string(to_string(recv.type)));
}

void Resolver::resolve(Expr& e, std::optional<ValueType> expected) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Ident: case K::Param: case K::Object: case K::Bound:
      resolve_ident(e);
      break;
    case K::Component:
      if (e.flag) {
        e.kind = K::Ident;
        e.kids.clear();
        resolve_ident(e);
      } else {
        e.kind = K::Member;
        resolve_member(e);
      }
      break;
    case K::Member:
      resolve_member(e);
      break;
    case K::BoolLit: e.type = ValueType::Bool; break;
    case K::IntLit: e.type = ValueType::Int; break;
    case K::ElemLit: e.type = ValueType::Elem; break;
    case K::Current:
      if (!scope_.allow_current) fail(ErrorCode::UnknownComponent, e, "'Current' is not available here");
      e.type = ValueType::Object;
      break;
    case K::Other:
      if (!scope_.allow_other) fail(ErrorCode::UnknownComponent, e, "'other' is only available in the equality contract");
      e.type = ValueType::Object;
      break;
    case K::Result:
      if (!scope_.result) fail(ErrorCode::TypeError, e, "'Result' is only available in query postconditions");
      e.type = *scope_.result;
      break;
    case K::Old:
      if (!scope_.allow_old) fail(ErrorCode::TypeError, e, "'old' is only available in postconditions");
      if (in_old_) fail(ErrorCode::TypeError, e, "nested 'old'");
      in_old_ = true;
      resolve(e.kids[0], expected);
      in_old_ = false;
      e.type = e.kids[0].type;
      break;
    case K::Not:
      expect(e.kids[0], ValueType::Bool);
      e.type = ValueType::Bool;
      break;
    case K::And: case K::Or: case K::Implies:
      expect(e.kids[0], ValueType::Bool);
      expect(e.kids[1], ValueType::Bool);
      e.type = ValueType::Bool;
      break;
    case K::Eq: case K::Neq:
      resolve(e.kids[0], std::nullopt);
      resolve(e.kids[1], e.kids[0].type);
      e.type = ValueType::Bool;
      break;
    case K::Lt: case K::Le: case K::Gt: case K::Ge:
      expect(e.kids[0], ValueType::Int);
      expect(e.kids[1], ValueType::Int);
      e.type = ValueType::Bool;
      break;
    case K::IsEqual:
      expect(e.kids[0], ValueType::Object);
      expect(e.kids[1], ValueType::Object);
      e.type = ValueType::Bool;
      break;
    case K::Extended:
      expect(e.kids[0], ValueType::Seq);
      expect(e.kids[1], ValueType::Elem);
      e.type = ValueType::Seq;
      break;
    case K::ButLast:
      expect(e.kids[0], ValueType::Seq);
      e.type = ValueType::Seq;
      break;
    case K::Last: case K::First:
      expect(e.kids[0], ValueType::Seq);
      e.type = ValueType::Elem;
      break;
    case K::SeqIsEmpty:
      expect(e.kids[0], ValueType::Seq);
      e.type = ValueType::Bool;
      break;
    case K::Count:
      expect(e.kids[0], ValueType::Seq);
      e.type = ValueType::Int;
      break;
    case K::Index:
      expect(e.kids[0], ValueType::Seq);
      expect(e.kids[1], ValueType::Int);
      e.type = ValueType::Elem;
      break;
    case K::Across:
      expect(e.kids[0], ValueType::Int);
      expect(e.kids[1], ValueType::Int);
      if (e.name.empty()) e.name = "i";
      e.number = std::int64_t(binders_.size());
      binders_.push_back(e.name);
      expect(e.kids[2], ValueType::Bool);
      binders_.pop_back();
      e.type = ValueType::Bool;
      break;
  }
  if (expected && e.type != *expected)
    fail(ErrorCode::TypeError, e,
         "expected " + std::string(to_string(*expected)) + " but '" + to_string(e) + "' has type " +
             std::string(to_string(e.type)));
}

}  // namespace

void resolve_expr(Expr& e, const ExprScope& scope, std::optional<ValueType> expected) {
  Resolver r(scope);
  r.resolve(e, expected);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

const ObjectState* state_of(const Value& obj, std::span<const ObjectState* const> states) {
  if (obj.kind != Value::Kind::Object) return nullptr;
  if (obj.scalar < 0 || std::size_t(obj.scalar) >= states.size()) return nullptr;
  return states[std::size_t(obj.scalar)];
}

}  // namespace

Value eval_expr(const Expr& e, EvalContext& c) {
  using K = Expr::Kind;
  auto poison = [&c]() {
    c.undefined_seen = true;
    return Value::undefined();
  };
  switch (e.kind) {
    case K::Ident: case K::Member:
      throw Error(ErrorCode::TypeError, "unresolved expression '" + to_string(e) + "'", e.pos);
    case K::BoolLit: return Value::boolean(e.number != 0);
    case K::IntLit: return Value::integer(e.number);
    case K::ElemLit: return Value::element(int(e.number));
    case K::Current: return Value::object(c.current);
    case K::Other: return Value::object(c.other);
    case K::Object:
      if (std::size_t(e.number) >= c.bindings.size())
        throw Error(ErrorCode::TypeError, "object '" + e.name + "' is not bound", e.pos);
      return Value::object(c.bindings[std::size_t(e.number)]);
    case K::Param:
      if (std::size_t(e.number) >= c.params.size())
        throw Error(ErrorCode::TypeError, "parameter '" + e.name + "' is not bound", e.pos);
      return c.params[std::size_t(e.number)];
    case K::Bound: return Value::integer(c.bound.at(std::size_t(e.number)));
    case K::Result:
      if (!c.result) throw Error(ErrorCode::TypeError, "'Result' is not bound", e.pos);
      return *c.result;
    case K::Component: {
      Value obj = eval_expr(e.kids[0], c);
      const ObjectState* st = state_of(obj, c.now);
      if (!st || st->is_masked(int(e.number))) return poison();
      return st->slots[std::size_t(e.number)];
    }
    case K::Old: {
      std::swap(c.now, c.before);
      Value v;
      try {
        v = eval_expr(e.kids[0], c);
      } catch (...) {
        std::swap(c.now, c.before);
        throw;
      }
      std::swap(c.now, c.before);
      return v;
    }
    case K::Not: return Value::boolean(!holds(e.kids[0], c));
    case K::And: return Value::boolean(holds(e.kids[0], c) && holds(e.kids[1], c));
    case K::Or: return Value::boolean(holds(e.kids[0], c) || holds(e.kids[1], c));
    case K::Implies: return Value::boolean(!holds(e.kids[0], c) || holds(e.kids[1], c));
    case K::Eq: case K::Neq: {
      Value a = eval_expr(e.kids[0], c);
      Value b = eval_expr(e.kids[1], c);
      if (a.is_undefined() || b.is_undefined()) {
        c.undefined_seen = true;
        return Value::boolean(false);
      }
      return Value::boolean((a == b) == (e.kind == K::Eq));
    }
    case K::Lt: case K::Le: case K::Gt: case K::Ge: {
      Value a = eval_expr(e.kids[0], c);
      Value b = eval_expr(e.kids[1], c);
      if (a.is_undefined() || b.is_undefined()) {
        c.undefined_seen = true;
        return Value::boolean(false);
      }
      switch (e.kind) {
        case K::Lt: return Value::boolean(a.scalar < b.scalar);
        case K::Le: return Value::boolean(a.scalar <= b.scalar);
        case K::Gt: return Value::boolean(a.scalar > b.scalar);
        default: return Value::boolean(a.scalar >= b.scalar);
      }
    }
    case K::IsEqual: {
      Value a = eval_expr(e.kids[0], c);
      Value b = eval_expr(e.kids[1], c);
      const ObjectState* sa = state_of(a, c.now);
      const ObjectState* sb = state_of(b, c.now);
      if (!sa || !sb) {
        c.undefined_seen = true;
        return Value::boolean(false);
      }
      if (c.space && sa->id >= 0 && sb->id >= 0) return Value::boolean(c.space->equal_states(sa->id, sb->id));
      return Value::boolean(equality_holds(*c.cls, *sa, *sb));
    }
    case K::Extended: {
      Value s = eval_expr(e.kids[0], c);
      Value x = eval_expr(e.kids[1], c);
      if (s.is_undefined() || x.is_undefined()) return poison();
      s.seq.push_back(int(x.scalar));
      return s;
    }
    case K::ButLast: {
      Value s = eval_expr(e.kids[0], c);
      if (s.is_undefined() || s.seq.empty()) return poison();
      s.seq.pop_back();
      return s;
    }
    case K::Last: case K::First: {
      Value s = eval_expr(e.kids[0], c);
      if (s.is_undefined() || s.seq.empty()) return poison();
      return Value::element(e.kind == K::Last ? s.seq.back() : s.seq.front());
    }
    case K::SeqIsEmpty: {
      Value s = eval_expr(e.kids[0], c);
      if (s.is_undefined()) return poison();
      return Value::boolean(s.seq.empty());
    }
    case K::Count: {
      Value s = eval_expr(e.kids[0], c);
      if (s.is_undefined()) return poison();
      return Value::integer(std::int64_t(s.seq.size()));
    }
    case K::Index: {
      Value s = eval_expr(e.kids[0], c);
      Value i = eval_expr(e.kids[1], c);
      if (s.is_undefined() || i.is_undefined()) return poison();
      if (i.scalar < 1 || i.scalar > std::int64_t(s.seq.size())) return poison();
      return Value::element(s.seq[std::size_t(i.scalar - 1)]);
    }
    case K::Across: {
      Value lo = eval_expr(e.kids[0], c);
      Value hi = eval_expr(e.kids[1], c);
      if (lo.is_undefined() || hi.is_undefined()) {
        c.undefined_seen = true;
        return Value::boolean(false);
      }
      for (std::int64_t i = lo.scalar; i <= hi.scalar; ++i) {
        c.bound.push_back(i);
        bool ok = holds(e.kids[2], c);
        c.bound.pop_back();
        if (!ok) return Value::boolean(false);
      }
      return Value::boolean(true);
    }
  }
  throw Error(ErrorCode::TypeError, "malformed expression", e.pos);
}

bool holds(const Expr& e, EvalContext& ctx) {
  Value v = eval_expr(e, ctx);
  if (v.is_undefined()) {
    ctx.undefined_seen = true;
    return false;
  }
  if (v.kind != Value::Kind::Bool)
    throw Error(ErrorCode::TypeError, "non-boolean assertion '" + to_string(e) + "'", e.pos);
  return v.scalar != 0;
}

}  // namespace ccheck
