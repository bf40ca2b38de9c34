#include <fstream>
#include <set>
#include <sstream>

#include "ccheck/frontend.hpp"
#include "lexer.hpp"

namespace ccheck {

using detail::Tok;
using detail::Token;
using detail::TokenStream;

namespace {

const std::set<std::string, std::less<>> kReserved = {
    "adt",     "functions", "preconditions", "axioms", "requires", "class",  "model",
    "create",  "map",       "command",       "query",  "require",  "ensure", "equality",
    "not",     "and",       "or",            "implies", "old",     "then",   "else",
    "across",  "as",        "all",           "end",    "do",       "local",  "Result",
    "Current", "True",      "False",         "true",   "false",
};

bool reserved(std::string_view w) { return kReserved.count(w) != 0; }

Diagnostics with_file(Diagnostics diags, std::string_view file) {
  for (auto& d : diags) d.file = std::string(file);
  return diags;
}

// ---------------------------------------------------------------------------
// ADT files

class AdtParser {
 public:
  explicit AdtParser(TokenStream& ts) : ts_(ts) {}

  AdtSpec parse() {
    if (!ts_.at_word("adt")) ts_.fail("expected 'adt' header");
    ts_.next();
    spec_.name = ts_.expect_ident("ADT name").text;
    if (ts_.accept(Tok::LBracket)) {
      spec_.parameter = ts_.expect_ident("type parameter").text;
      ts_.expect(Tok::RBracket, "']'");
    }
    std::string principal = spec_.parameter.empty() ? spec_.name
                                                    : spec_.name + "[" + spec_.parameter + "]";
    spec_.sorts.push_back({principal, SortKind::Principal});
    if (!spec_.parameter.empty()) spec_.sorts.push_back({spec_.parameter, SortKind::Parameter});
    spec_.sorts.push_back(boolean_sort());

    if (ts_.accept_word("functions"))
      while (starts_entry()) parse_function();
    if (ts_.accept_word("preconditions"))
      while (ts_.at(Tok::Ident) && !reserved(ts_.peek().text)) parse_precondition();
    if (ts_.accept_word("axioms"))
      while (starts_entry()) parse_axiom();
    if (!ts_.at(Tok::End)) ts_.fail("unexpected input");
    return spec_;
  }

 private:
  bool starts_entry() const {
    return ts_.at(Tok::Ident) && !reserved(ts_.peek().text) && ts_.peek(1).kind == Tok::Colon;
  }

  Sort parse_sort() {
    const auto& tok = ts_.expect_ident("sort");
    std::string name = tok.text;
    if (ts_.accept(Tok::LBracket)) {
      name += "[" + ts_.expect_ident("type parameter").text + "]";
      ts_.expect(Tok::RBracket, "']'");
    }
    if (name == spec_.name && !spec_.parameter.empty()) name += "[" + spec_.parameter + "]";
    if (const auto* s = spec_.find_sort(name)) return *s;
    return {name, SortKind::Parameter};
  }

  void parse_function() {
    FunctionSig f;
    f.pos = ts_.peek().pos;
    f.name = ts_.next().text;
    ts_.expect(Tok::Colon, "':'");
    if (!ts_.at(Tok::Arrow) && !ts_.at(Tok::PartialArrow)) {
      f.arg_sorts.push_back(parse_sort());
      while (ts_.accept_word("x")) f.arg_sorts.push_back(parse_sort());
    }
    if (ts_.accept(Tok::PartialArrow)) {
      f.partial = true;
    } else {
      ts_.expect(Tok::Arrow, "'->' or '->?'");
    }
    f.result_sort = parse_sort();
    spec_.functions.push_back(std::move(f));
  }

  void parse_precondition() {
    Precondition p;
    p.pos = ts_.peek().pos;
    p.function = ts_.next().text;
    ts_.expect(Tok::LParen, "'('");
    if (!ts_.at(Tok::RParen)) {
      do {
        p.formal_vars.push_back({ts_.expect_ident("variable").text, {}});
      } while (ts_.accept(Tok::Comma));
    }
    ts_.expect(Tok::RParen, "')'");
    ts_.expect_word("requires");
    p.condition = parse_term();
    spec_.preconditions.push_back(std::move(p));
  }

  void parse_axiom() {
    Axiom ax;
    ax.pos = ts_.peek().pos;
    ax.label = ts_.next().text;
    ts_.expect(Tok::Colon, "':'");
    ax.body = parse_term();
    spec_.axioms.push_back(std::move(ax));
  }

  Term parse_term() {
    SourcePos pos = ts_.peek().pos;
    if (ts_.accept_word("not")) return Term::negate(parse_term(), pos);
    Term lhs = parse_simple();
    if (ts_.at(Tok::Eq)) {
      SourcePos eq = ts_.next().pos;
      Term rhs = parse_simple();
      return Term::equation(std::move(lhs), std::move(rhs), eq);
    }
    return lhs;
  }

  Term parse_simple() {
    if (ts_.accept(Tok::LParen)) {
      Term t = parse_term();
      ts_.expect(Tok::RParen, "')'");
      return t;
    }
    if (!ts_.at(Tok::Ident) || reserved(ts_.peek().text)) ts_.fail("expected a term");
    const auto tok = ts_.next();
    if (ts_.accept(Tok::LParen)) {
      std::vector<Term> args;
      if (!ts_.at(Tok::RParen)) {
        do {
          args.push_back(parse_term());
        } while (ts_.accept(Tok::Comma));
      }
      ts_.expect(Tok::RParen, "')'");
      return Term::apply(tok.text, std::move(args), tok.pos);
    }
    return Term::variable(tok.text, {}, tok.pos);
  }

  TokenStream& ts_;
  AdtSpec spec_;
};

// ---------------------------------------------------------------------------
// Expressions

class ExprParser {
 public:
  explicit ExprParser(TokenStream& ts) : ts_(ts) {}

  Expr parse() { return parse_implies(); }

 private:
  Expr parse_implies() {
    Expr lhs = parse_or();
    if (ts_.at_word("implies")) {
      SourcePos pos = ts_.next().pos;
      Expr rhs = parse_implies();
      return Expr::binary(Expr::Kind::Implies, std::move(lhs), std::move(rhs), pos);
    }
    return lhs;
  }

  Expr parse_or() {
    Expr lhs = parse_and();
    while (ts_.at_word("or")) {
      SourcePos pos = ts_.next().pos;
      bool else_ = ts_.accept_word("else");
      Expr e = Expr::binary(Expr::Kind::Or, std::move(lhs), parse_and(), pos);
      e.flag = else_;
      lhs = std::move(e);
    }
    return lhs;
  }

  Expr parse_and() {
    Expr lhs = parse_not();
    while (ts_.at_word("and")) {
      SourcePos pos = ts_.next().pos;
      bool then_ = ts_.accept_word("then");
      Expr e = Expr::binary(Expr::Kind::And, std::move(lhs), parse_not(), pos);
      e.flag = then_;
      lhs = std::move(e);
    }
    return lhs;
  }

  Expr parse_not() {
    if (ts_.at_word("not")) {
      SourcePos pos = ts_.next().pos;
      return Expr::unary(Expr::Kind::Not, parse_not(), pos);
    }
    return parse_compare();
  }

  Expr parse_compare() {
    Expr lhs = parse_old();
    Expr::Kind k;
    switch (ts_.peek().kind) {
      case Tok::Eq: k = Expr::Kind::Eq; break;
      case Tok::Neq: k = Expr::Kind::Neq; break;
      case Tok::Lt: k = Expr::Kind::Lt; break;
      case Tok::Le: k = Expr::Kind::Le; break;
      case Tok::Gt: k = Expr::Kind::Gt; break;
      case Tok::Ge: k = Expr::Kind::Ge; break;
      default: return lhs;
    }
    SourcePos pos = ts_.next().pos;
    return Expr::binary(k, std::move(lhs), parse_old(), pos);
  }

  Expr parse_old() {
    if (ts_.at_word("old")) {
      SourcePos pos = ts_.next().pos;
      return Expr::unary(Expr::Kind::Old, parse_postfix(), pos);
    }
    return parse_postfix();
  }

  Expr parse_postfix() {
    Expr e = parse_primary();
    while (true) {
      if (ts_.at(Tok::Dot)) {
        ts_.next();
        const auto name = ts_.expect_ident("feature name after '.'");
        std::vector<Expr> args;
        bool parens = false;
        if (ts_.accept(Tok::LParen)) {
          parens = true;
          if (!ts_.at(Tok::RParen)) {
            do {
              args.push_back(parse());
            } while (ts_.accept(Tok::Comma));
          }
          ts_.expect(Tok::RParen, "')'");
        }
        e = Expr::member(std::move(e), name.text, std::move(args), parens, name.pos);
      } else if (ts_.at(Tok::LBracket)) {
        SourcePos pos = ts_.next().pos;
        Expr idx = parse();
        ts_.expect(Tok::RBracket, "']'");
        e = Expr::binary(Expr::Kind::Index, std::move(e), std::move(idx), pos);
      } else {
        return e;
      }
    }
  }

  Expr parse_primary() {
    const Token& t = ts_.peek();
    SourcePos pos = t.pos;
    if (t.kind == Tok::Int) {
      Expr e;
      e.kind = Expr::Kind::IntLit;
      e.type = ValueType::Int;
      e.number = std::stoll(ts_.next().text);
      e.pos = pos;
      return e;
    }
    if (ts_.accept(Tok::LParen)) {
      Expr e = parse();
      ts_.expect(Tok::RParen, "')'");
      return e;
    }
    if (t.kind != Tok::Ident) ts_.fail("expected an expression");
    const std::string w = t.text;
    auto simple = [&](Expr::Kind k) {
      ts_.next();
      Expr e;
      e.kind = k;
      e.pos = pos;
      return e;
    };
    if (w == "True" || w == "true" || w == "False" || w == "false") {
      ts_.next();
      Expr e = Expr::boolean(w == "True" || w == "true");
      e.pos = pos;
      return e;
    }
    if (w == "Result") return simple(Expr::Kind::Result);
    if (w == "Current") return simple(Expr::Kind::Current);
    if (w == "other") return simple(Expr::Kind::Other);
    if (w == "across") {
      ts_.next();
      Expr e;
      e.kind = Expr::Kind::Across;
      e.pos = pos;
      e.kids.push_back(parse());
      ts_.expect(Tok::DotDot, "'..'");
      e.kids.push_back(parse());
      if (ts_.accept_word("as")) {
        e.name = ts_.expect_ident("index name").text;
        e.flag = true;
      }
      ts_.expect_word("all");
      e.kids.push_back(parse());
      ts_.expect_word("end");
      return e;
    }
    if (reserved(w)) ts_.fail("expected an expression");
    ts_.next();
    if (ts_.at(Tok::LParen)) ts_.fail("calls must name their target object, e.g. Current." + w + "(...)");
    return Expr::ident(w, pos);
  }

  TokenStream& ts_;
};

// ---------------------------------------------------------------------------
// Contract files

class ContractParser {
 public:
  explicit ContractParser(TokenStream& ts) : ts_(ts) {}

  ContractClass parse() {
    if (!ts_.at_word("class")) ts_.fail("expected 'class' header");
    ts_.next();
    cls_.name = ts_.expect_ident("class name").text;
    if (ts_.accept(Tok::LBracket)) {
      cls_.parameter = ts_.expect_ident("type parameter").text;
      ts_.expect(Tok::RBracket, "']'");
    }
    bool have_equality = false;
    while (!ts_.at(Tok::End)) {
      if (ts_.accept_word("model")) {
        ModelField m;
        m.name = ts_.expect_ident("model field name").text;
        ts_.expect(Tok::Colon, "':'");
        const auto& theory = ts_.expect_ident("SEQ");
        if (theory.text != "SEQ" && theory.text != "MML_SEQUENCE")
          throw Error(ErrorCode::TypeError, "unsupported model theory '" + theory.text + "'",
                      theory.pos, theory.text);
        ts_.expect(Tok::LBracket, "'['");
        check_element_sort(ts_.expect_ident("element sort"));
        ts_.expect(Tok::RBracket, "']'");
        cls_.model_fields.push_back(std::move(m));
      } else if (ts_.accept_word("create")) {
        if (!cls_.creation_feature.empty()) ts_.fail("duplicate 'create' declaration");
        cls_.creation_feature = ts_.expect_ident("creation feature name").text;
      } else if (ts_.accept_word("map")) {
        FeatureMapping m;
        m.adt_function = ts_.expect_ident("ADT function name").text;
        ts_.expect(Tok::Arrow, "'->'");
        m.feature = ts_.expect_ident("feature name").text;
        cls_.mapping.push_back(std::move(m));
      } else if (ts_.at_word("command") || ts_.at_word("query")) {
        parse_feature();
      } else if (ts_.accept_word("equality")) {
        if (have_equality) ts_.fail("duplicate equality contract");
        have_equality = true;
        ts_.expect(Tok::Colon, "':'");
        cls_.equality = ExprParser(ts_).parse();
      } else {
        ts_.fail("expected 'model', 'create', 'map', 'command', 'query' or 'equality'");
      }
    }
    return cls_;
  }

 private:
  void check_element_sort(const detail::Token& t) {
    if (t.text != cls_.parameter)
      throw Error(ErrorCode::TypeError, "expected element sort '" + cls_.parameter + "'", t.pos,
                  t.text);
  }

  ValueType parse_type() {
    const auto& t = ts_.expect_ident("type");
    if (t.text == "BOOLEAN") return ValueType::Bool;
    check_element_sort(t);
    return ValueType::Elem;
  }

  void parse_feature() {
    Feature f;
    f.kind = ts_.next().text == "command" ? FeatureKind::Command : FeatureKind::Query;
    f.pos = ts_.peek().pos;
    f.name = ts_.expect_ident("feature name").text;
    if (reserved(f.name)) throw Error(ErrorCode::SyntaxError, "reserved word used as feature name", f.pos, f.name);
    if (ts_.accept(Tok::LParen)) {
      if (!ts_.at(Tok::RParen)) {
        do {
          std::vector<std::string> names;
          do {
            names.push_back(ts_.expect_ident("parameter name").text);
          } while (ts_.accept(Tok::Comma));
          ts_.expect(Tok::Colon, "':'");
          ValueType t = parse_type();
          for (auto& n : names) f.params.push_back({std::move(n), t});
        } while (ts_.accept(Tok::Semicolon));
      }
      ts_.expect(Tok::RParen, "')'");
    }
    if (f.kind == FeatureKind::Query) {
      ts_.expect(Tok::Colon, "':' and result type");
      f.result_type = parse_type();
    }
    while (ts_.at_word("require") || ts_.at_word("ensure")) {
      bool req = ts_.next().text == "require";
      Clause c;
      if (ts_.at(Tok::Ident) && !reserved(ts_.peek().text) && ts_.peek(1).kind == Tok::Colon) {
        c.label = ts_.next().text;
        ts_.next();
      }
      c.expr = ExprParser(ts_).parse();
      (req ? f.require : f.ensure).push_back(std::move(c));
    }
    cls_.features.push_back(std::move(f));
  }

  TokenStream& ts_;
  ContractClass cls_;
};

// ---------------------------------------------------------------------------
// Driver listings

DriverFamily family_from_name(const std::string& name, std::string& origin) {
  static const std::string kAxiom = "axiom_";
  static const std::string kEquiv = "equivalence_";
  static const std::string kWd = "_is_well_defined";
  if (name.rfind(kAxiom, 0) == 0) {
    origin = name.substr(kAxiom.size());
    return DriverFamily::Axiom;
  }
  if (name.rfind(kEquiv, 0) == 0) {
    origin = name.substr(kEquiv.size());
    return DriverFamily::Equivalence;
  }
  if (name.size() > kWd.size() && name.compare(name.size() - kWd.size(), kWd.size(), kWd) == 0) {
    origin = name.substr(0, name.size() - kWd.size());
    return DriverFamily::WellDefinedness;
  }
  throw Error(ErrorCode::SyntaxError,
              "driver name '" + name +
                  "' must be axiom_<label>, equivalence_<property> or <feature>_is_well_defined");
}

class DriverParser {
 public:
  DriverParser(TokenStream& ts, const ContractClass& cls) : ts_(ts), cls_(cls) {}

  bool at_end() const { return ts_.at(Tok::End); }

  SpecDriver parse() {
    SpecDriver d;
    const auto& name_tok = ts_.expect_ident("driver name");
    d.name = name_tok.text;
    try {
      d.family = family_from_name(d.name, d.origin);
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), name_tok.pos, name_tok.text);
    }
    d.element_type = cls_.parameter;
    if (ts_.accept(Tok::LParen)) {
      do {
        parse_decl_group(d, false);
      } while (ts_.accept(Tok::Semicolon));
      ts_.expect(Tok::RParen, "')'");
    }
    if (ts_.accept_word("local")) {
      while (ts_.at(Tok::Ident) && !reserved(ts_.peek().text)) parse_decl_group(d, true);
    }
    std::vector<Expr> pre, post;
    if (ts_.accept_word("require"))
      while (!ts_.at_word("do")) d.pre.push_back(ExprParser(ts_).parse());
    ts_.expect_word("do");
    while (!ts_.at_word("ensure") && !ts_.at_word("end")) d.body.push_back(parse_call(d));
    if (ts_.accept_word("ensure"))
      while (!ts_.at_word("end")) d.post.push_back(ExprParser(ts_).parse());
    ts_.expect_word("end");
    if (d.object_type.empty()) d.object_type = cls_.name;
    resolve_driver(d, cls_);
    return d;
  }

 private:
  void parse_decl_group(SpecDriver& d, bool created) {
    std::vector<std::string> names;
    do {
      names.push_back(ts_.expect_ident("name").text);
    } while (ts_.accept(Tok::Comma));
    ts_.expect(Tok::Colon, "':'");
    const auto& tok = ts_.expect_ident("type");
    std::string type = tok.text;
    if (ts_.accept(Tok::LBracket)) {
      type += "[" + ts_.expect_ident("type parameter").text + "]";
      ts_.expect(Tok::RBracket, "']'");
    }
    if (type == "BOOLEAN" || type == cls_.parameter) {
      if (created) throw Error(ErrorCode::TypeError, "locals must be objects", tok.pos, type);
      for (auto& n : names)
        d.params.push_back({std::move(n), type == "BOOLEAN" ? ValueType::Bool : ValueType::Elem});
      return;
    }
    if (!d.object_type.empty() && d.object_type != type)
      throw Error(ErrorCode::TypeError, "all objects must share one type", tok.pos, type);
    d.object_type = type;
    for (auto& n : names) d.objects.push_back({std::move(n), created});
  }

  Call parse_call(const SpecDriver& d) {
    Call c;
    c.creation = ts_.accept_word("create");
    const auto& target = ts_.expect_ident("call target");
    c.target = d.object_index(target.text);
    if (c.target < 0)
      throw Error(ErrorCode::UnknownComponent, "unknown object '" + target.text + "'", target.pos,
                  target.text);
    ts_.expect(Tok::Dot, "'.'");
    c.feature = ts_.expect_ident("feature name").text;
    if (ts_.accept(Tok::LParen)) {
      if (!ts_.at(Tok::RParen)) {
        do {
          c.args.push_back(ExprParser(ts_).parse());
        } while (ts_.accept(Tok::Comma));
      }
      ts_.expect(Tok::RParen, "')'");
    }
    return c;
  }

  TokenStream& ts_;
  const ContractClass& cls_;
};

template <class F>
auto guarded(std::string_view file, F&& body) -> Parsed<decltype(body())> {
  try {
    return body();
  } catch (const Error& e) {
    return Diagnostics{e.to_diagnostic(std::string(file))};
  }
}

}  // namespace

Parsed<AdtSpec> parse_adt(std::string_view text, std::string_view file) {
  auto raw = guarded(file, [&] {
    TokenStream ts(detail::tokenize(text));
    return AdtParser(ts).parse();
  });
  if (!raw) return raw;
  auto validated = validate_adt(std::move(raw).value());
  if (!validated) return with_file(validated.diagnostics(), file);
  return validated;
}

Parsed<ContractClass> parse_contract(std::string_view text, std::string_view file) {
  auto raw = guarded(file, [&] {
    TokenStream ts(detail::tokenize(text));
    return ContractParser(ts).parse();
  });
  if (!raw) return raw;
  ContractClass cls = std::move(raw).value();
  auto diags = validate_contract(cls);
  if (!diags.empty()) return with_file(std::move(diags), file);
  return cls;
}

Parsed<Expr> parse_expr(std::string_view text, const ExprScope& scope,
                        std::optional<ValueType> expected) {
  return guarded({}, [&] {
    TokenStream ts(detail::tokenize(text));
    Expr e = ExprParser(ts).parse();
    if (!ts.at(Tok::End)) ts.fail("unexpected input after expression");
    resolve_expr(e, scope, expected);
    return e;
  });
}

Parsed<SpecDriver> parse_driver(std::string_view text, const ContractClass& cls,
                                std::string_view file) {
  return guarded(file, [&] {
    TokenStream ts(detail::tokenize(text));
    DriverParser p(ts, cls);
    SpecDriver d = p.parse();
    if (!p.at_end()) ts.fail("unexpected input after driver");
    return d;
  });
}

Parsed<DriverSet> parse_drivers(std::string_view text, const ContractClass& cls,
                                std::string_view file) {
  return guarded(file, [&] {
    TokenStream ts(detail::tokenize(text));
    DriverParser p(ts, cls);
    DriverSet out;
    while (!p.at_end()) out.push_back(p.parse());
    return out;
  });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open '" + path + "'", {}, path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ccheck
