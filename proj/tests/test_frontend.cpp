#include "support.hpp"

using namespace ccheck;

namespace {

const char* kAdtFiles[] = {"stack.adt", "stack_noaxioms.adt"};
const char* kContractFiles[] = {"stack_weak.ct", "stack_malicious.ct", "stack_model.ct",
                                "stack_model_no_is_empty_def.ct", "stack_model_prefix_equality.ct"};

}  // namespace

TEST_SUITE("frontend") {
  TEST_CASE("stack ADT parses with counts") {
    AdtSpec a = testing::adt();
    CHECK(a.name == "STACK");
    CHECK(a.parameter == "G");
    CHECK(a.functions.size() == 5);
    CHECK(a.preconditions.size() == 2);
    CHECK(a.axioms.size() == 4);
  }

  TEST_CASE("empty input reports a missing header") {
    auto p = parse_adt("", "empty.adt");
    REQUIRE_FALSE(p.ok());
    CHECK(p.diagnostics().front().code == ErrorCode::SyntaxError);
    CHECK(p.diagnostics().front().message.find("expected 'adt'") != std::string::npos);
    CHECK(p.diagnostics().front().file == "empty.adt");
  }

  TEST_CASE("lexical errors carry a position") {
    auto p = parse_adt("adt S\nfunctions\n  f: -> S $\n", "lex.adt");
    REQUIRE_FALSE(p.ok());
    const Diagnostic& d = p.diagnostics().front();
    CHECK(d.code == ErrorCode::LexicalError);
    CHECK(d.pos.line == 3);
    CHECK(d.pos.column == 11);
  }

  TEST_CASE("every diagnostic is positioned") {
    const char* bad[] = {
        "adt S\nfunctions\n  f: -> T\n",
        "adt S\nfunctions\n  f: S ->\n",
        "adt S\nfunctions\n  f: -> S\naxioms\n  A1: g(f) = f\n",
        "adt S\nfunctions\n  f: -> S\n  f: -> S\n",
    };
    for (const char* text : bad) {
      auto p = parse_adt(text, "x.adt");
      REQUIRE_FALSE(p.ok());
      for (const auto& d : p.diagnostics()) CHECK_MESSAGE(d.pos.line > 0, d.format());
    }
  }

  TEST_CASE("ADT files round-trip through the printer") {
    for (const char* name : kAdtFiles) {
      CAPTURE(name);
      AdtSpec a = testing::adt(name);
      std::string printed = pretty_print(a);
      auto again = parse_adt(printed, name);
      REQUIRE(again.ok());
      CHECK(again.value() == a);
      CHECK(pretty_print(again.value()) == printed);
    }
  }

  TEST_CASE("contract files round-trip through the printer") {
    for (const char* name : kContractFiles) {
      CAPTURE(name);
      ContractClass c = testing::contract(name);
      std::string printed = pretty_print(c);
      auto again = parse_contract(printed, name);
      REQUIRE_MESSAGE(again.ok(), again.diagnostics().front().format());
      CHECK(again.value() == c);
      CHECK(pretty_print(again.value()) == printed);
    }
  }

  TEST_CASE("driver listings round-trip") {
    AdtSpec a = testing::adt();
    for (const char* name : kContractFiles) {
      CAPTURE(name);
      ContractClass c = testing::contract(name);
      DriverSet all = generate_drivers(a, c).all();
      std::string printed = pretty_print(all);
      auto again = parse_drivers(printed, c);
      REQUIRE_MESSAGE(again.ok(), again.diagnostics().front().format());
      REQUIRE(again.value().size() == all.size());
      CHECK(pretty_print(again.value()) == printed);
      for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK(again.value()[i].objects == all[i].objects);
        CHECK(again.value()[i].params == all[i].params);
        CHECK(again.value()[i].pre == all[i].pre);
        CHECK(again.value()[i].body == all[i].body);
        CHECK(again.value()[i].post == all[i].post);
      }
    }
  }

  TEST_CASE("driver parsing rejects unknown features") {
    ContractClass c = testing::contract("stack_weak.ct");
    auto p = parse_driver("axiom_U1 (s: STACK[G])\n  do\n    s.push\n  ensure\n    s.is_empty\n  end\n", c, "d.txt");
    REQUIRE_FALSE(p.ok());
    CHECK(p.diagnostics().front().code == ErrorCode::UnmappedFunction);
  }

  TEST_CASE("missing files raise FileNotFound") {
    try {
      (void)read_file("/nonexistent/stack.adt");
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::FileNotFound);
    }
  }
}
