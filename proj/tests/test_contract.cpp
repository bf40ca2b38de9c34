#include "oracle.hpp"
#include "support.hpp"

using namespace ccheck;

namespace {

ObjectState model_state(const ContractClass& cls, std::vector<int> seq) {
  ObjectState s;
  s.slots = {Value::sequence(seq), Value::element(seq.empty() ? 0 : seq.back()), Value::boolean(seq.empty())};
  normalize_state(cls, s);
  return s;
}

Value eval_on(const std::string& text, const ContractClass& cls, const ObjectState& now, const ObjectState& before,
              std::vector<Value> params = {}, bool* undefined = nullptr) {
  ExprScope scope;
  scope.cls = &cls;
  scope.allow_old = true;
  scope.params = {{"x", ValueType::Elem}};
  auto e = parse_expr(text, scope, std::nullopt);
  REQUIRE_MESSAGE(e.ok(), text);
  const ObjectState* n[1] = {&now};
  const ObjectState* b[1] = {&before};
  EvalContext ctx;
  ctx.cls = &cls;
  ctx.now = n;
  ctx.before = b;
  ctx.params = params;
  ctx.current = 0;
  Value v = eval_expr(e.value(), ctx);
  if (undefined) *undefined = ctx.undefined_seen;
  return v;
}

}  // namespace

TEST_SUITE("contract") {
  TEST_CASE("weak and model contracts parse") {
    ContractClass weak = testing::contract("stack_weak.ct");
    CHECK(weak.features.size() == 5);
    CHECK(weak.model_fields.empty());
    CHECK_FALSE(weak.equality.has_value());
    CHECK(weak.creation_feature == "new");

    ContractClass model = testing::contract("stack_model.ct");
    REQUIRE(model.model_fields.size() == 1);
    CHECK(model.model_fields[0].name == "sequence");
    CHECK(model.equality.has_value());
    CHECK(model.components().size() == 3);
  }

  TEST_CASE("unknown component is diagnosed") {
    auto p = parse_contract("class C[G]\ncreate new\ncommand new\n  ensure size = 0\n", "c.ct");
    REQUIRE_FALSE(p.ok());
    CHECK(p.diagnostics().front().code == ErrorCode::UnknownComponent);
    CHECK(p.diagnostics().front().token == "size");
    CHECK(p.diagnostics().front().pos.line == 4);
  }

  TEST_CASE("extension postcondition evaluates on sequences") {
    ContractClass cls = testing::contract("stack_model.ct");
    ObjectState before = model_state(cls, {0});
    ObjectState after = model_state(cls, {0, 1});
    CHECK(eval_on("sequence = old sequence.extended(x)", cls, after, before, {Value::element(1)}) == Value::boolean(true));
    CHECK(eval_on("sequence = old sequence.extended(x)", cls, after, before, {Value::element(0)}) == Value::boolean(false));
  }

  TEST_CASE("but_last on an empty sequence poisons comparisons") {
    // L=1 table: [] -> false (undefined), [e0] -> true.
    ContractClass cls = testing::contract("stack_model.ct");
    StateSpace space = state_space(cls, {1, 1});
    REQUIRE(space.size() == 2);
    for (const auto& s : space.states) {
      bool undefined = false;
      Value v = eval_on("sequence.but_last = sequence.but_last", cls, s, s, {}, &undefined);
      bool empty = s.slots[0].seq.empty();
      CHECK(v == Value::boolean(!empty));
      CHECK(undefined == empty);
    }
  }

  TEST_CASE("state space sizes") {
    CHECK(state_space(testing::contract("stack_weak.ct"), {1, 3}).size() == 2);
    CHECK(state_space(testing::contract("stack_model.ct"), {1, 1}).size() == 2);
    CHECK(state_space(testing::contract("stack_model.ct"), {1, 0}).size() == 1);
  }

  TEST_CASE("state space agrees with direct enumeration") {
    for (const char* name : {"stack_weak.ct", "stack_malicious.ct", "stack_model.ct", "stack_model_no_is_empty_def.ct"}) {
      ContractClass cls = testing::contract(name);
      for (int k = 1; k <= 2; ++k)
        for (int len = 0; len <= 3; ++len) {
          StateSpace space = state_space(cls, {k, len});
          auto naive = oracle::states(cls, {k, len});
          CHECK_MESSAGE(space.size() == naive.size(), name << " k=" << k << " L=" << len);
          for (const auto& s : naive) CHECK(space.index_of(s) >= 0);
        }
    }
  }

  TEST_CASE("state space is monotone in the bounds") {
    ContractClass cls = testing::contract("stack_model.ct");
    StateSpace small = state_space(cls, {1, 1});
    StateSpace large = state_space(cls, {2, 2});
    for (const auto& s : small.states) CHECK(large.index_of(s) >= 0);
  }

  TEST_CASE("model states pin is_empty to the sequence") {
    ContractClass cls = testing::contract("stack_model.ct");
    for (const auto& s : state_space(cls, {2, 3}).states) CHECK(s.slots[2] == Value::boolean(s.slots[0].seq.empty()));
  }

  TEST_CASE("model equality") {
    ContractClass cls = testing::contract("stack_model.ct");
    CHECK(equality_holds(cls, model_state(cls, {0, 1}), model_state(cls, {0, 1})));
    CHECK_FALSE(equality_holds(cls, model_state(cls, {0}), model_state(cls, {})));
    CHECK_FALSE(equality_holds(cls, model_state(cls, {0, 1}), model_state(cls, {1, 0})));
  }

  TEST_CASE("default equality is reflexive on every state") {
    ContractClass cls = testing::contract("stack_weak.ct");
    for (const auto& s : state_space(cls, {2, 2}).states) CHECK(equality_holds(cls, s, s));
  }

  TEST_CASE("evaluation is deterministic") {
    ContractClass cls = testing::contract("stack_model.ct");
    ObjectState s = model_state(cls, {1, 0});
    Value a = eval_on("across 1 .. sequence.count as i all sequence[i] = sequence[i] end", cls, s, s);
    Value b = eval_on("across 1 .. sequence.count as i all sequence[i] = sequence[i] end", cls, s, s);
    CHECK(a == b);
    CHECK(a == Value::boolean(true));
  }

  TEST_CASE("inconsistent definitions leave no states") {
    auto p = parse_contract("class C[G]\ncreate new\ncommand new\nquery q: BOOLEAN\n  ensure Result and not Result\n");
    REQUIRE(p.ok());
    CHECK_THROWS_AS(state_space(p.value(), {2, 2}), Error);
  }
}
