#include "support.hpp"

using namespace ccheck;

TEST_SUITE("adt") {
  TEST_CASE("stack specification validates and classifies functions") {
    AdtSpec s = testing::adt();
    CHECK(s.name == "STACK");
    CHECK(s.functions.size() == 5);
    CHECK(s.preconditions.size() == 2);
    CHECK(s.axioms.size() == 4);
    CHECK(s.find_function("new")->kind == FunctionKind::Creator);
    CHECK(s.find_function("extend")->kind == FunctionKind::Transformer);
    CHECK(s.find_function("remove")->kind == FunctionKind::Transformer);
    CHECK(s.find_function("item")->kind == FunctionKind::Observer);
    CHECK(s.find_function("is_empty")->kind == FunctionKind::Observer);
    CHECK(s.find_function("remove")->partial);
    CHECK_FALSE(s.find_function("extend")->partial);
  }

  TEST_CASE("classification is total and exclusive") {
    for (const auto& f : testing::adt().functions) CHECK(f.kind != FunctionKind::Unclassified);
  }

  TEST_CASE("validation is idempotent") {
    AdtSpec s = testing::adt();
    auto again = validate_adt(s);
    REQUIRE(again.ok());
    CHECK(again.value() == s);
  }

  TEST_CASE("every axiom is boolean") {
    AdtSpec s = testing::adt();
    for (const auto& ax : s.axioms) CHECK(term_sort(ax.body, s).kind == SortKind::Boolean);
  }

  TEST_CASE("empty axiom set with one creator is valid") {
    auto p = parse_adt("adt BAG[G]\nfunctions\n  empty: -> BAG[G]\n");
    REQUIRE(p.ok());
    CHECK(p.value().axioms.empty());
    CHECK(p.value().functions[0].kind == FunctionKind::Creator);
  }

  TEST_CASE("sort mismatch is reported at the inner argument") {
    std::string text = read_file(testing::corpus("stack.adt"));
    text.replace(text.find("A1: item(extend(s, x)) = x"), 26, "A1: item(extend(s, s)) = s");
    auto p = parse_adt(text, "bad.adt");
    REQUIRE_FALSE(p.ok());
    const Diagnostic& d = p.diagnostics().front();
    CHECK(d.code == ErrorCode::SortMismatch);
    CHECK(d.file == "bad.adt");
    CHECK(d.pos.line == 16);
    CHECK(d.pos.column == 22);
  }

  TEST_CASE("diagnostics for unknown symbols, duplicates and missing preconditions") {
    auto unknown = parse_adt("adt S[G]\nfunctions\n  new: -> S[G]\n  f: S[G] -> G\naxioms\n  A: f(grow(new)) = f(new)\n");
    REQUIRE_FALSE(unknown.ok());
    CHECK(unknown.diagnostics().front().code == ErrorCode::UnknownSymbol);

    auto dup = parse_adt("adt S[G]\nfunctions\n  new: -> S[G]\n  new: -> S[G]\n");
    REQUIRE_FALSE(dup.ok());
    CHECK(dup.diagnostics().front().code == ErrorCode::DuplicateName);

    auto partial = parse_adt("adt S[G]\nfunctions\n  new: -> S[G]\n  top: S[G] ->? G\n");
    REQUIRE_FALSE(partial.ok());
    CHECK(partial.diagnostics().front().code == ErrorCode::PartialWithoutPrecondition);

    auto partial_creator = parse_adt("adt S[G]\nfunctions\n  new: ->? S[G]\npreconditions\n  new() requires True\n");
    CHECK_FALSE(partial_creator.ok());
  }

  TEST_CASE("term_sort") {
    AdtSpec s = testing::adt();
    Sort stack = s.principal();
    Sort g = *s.find_sort("G");
    Term ext = Term::apply("extend", {Term::variable("s", stack), Term::variable("x", g)});
    CHECK(term_sort(ext, s).name == "STACK[G]");
    CHECK(term_sort(Term::apply("item", {ext}), s).name == "G");
    CHECK(term_sort(Term::apply("is_empty", {Term::apply("new", {})}), s).kind == SortKind::Boolean);
    CHECK_THROWS_AS(term_sort(Term::apply("pop", {ext}), s), Error);
  }

  TEST_CASE("axiom A2 is an equation with a nested application") {
    const AdtSpec a = testing::adt();
    const Axiom& a2 = a.axioms[1];
    CHECK(a2.label == "A2");
    REQUIRE(a2.body.kind == Term::Kind::Equation);
    CHECK(a2.body.args[0].name == "remove");
    CHECK(a2.body.args[0].args[0].name == "extend");
    CHECK(to_string(a2.body) == "remove(extend(s, x)) = s");
  }
}
