#include "ccheck/report.hpp"
#include "support.hpp"

using namespace ccheck;

namespace {

CompletenessReport run(const std::string& ct, Bounds b = {2, 3}) {
  return check_completeness(testing::adt(), testing::contract(ct), {b});
}

bool same(const DriverVerdict& a, const DriverVerdict& b) {
  if (a.status != b.status || a.vacuous != b.vacuous) return false;
  if (a.stats.environments != b.stats.environments || a.stats.branches != b.stats.branches ||
      a.stats.pruned != b.stats.pruned)
    return false;
  if (a.counterexample.has_value() != b.counterexample.has_value()) return false;
  return !a.counterexample || a.counterexample->narrative == b.counterexample->narrative;
}

DriverVerdict with_status(VerdictStatus s, DriverFamily f = DriverFamily::Axiom) {
  DriverVerdict v;
  v.driver = "d";
  v.family = f;
  v.status = s;
  return v;
}

}  // namespace

TEST_SUITE("checker") {
  TEST_CASE("weak contract proves every axiom but A2") {
    CompletenessReport r = run("stack_weak.ct");
    CHECK(testing::find(r, "axiom_A1").status == VerdictStatus::Valid);
    CHECK(testing::find(r, "axiom_A3").status == VerdictStatus::Valid);
    CHECK(testing::find(r, "axiom_A4").status == VerdictStatus::Valid);
    const DriverVerdict& a2 = testing::find(r, "axiom_A2");
    REQUIRE(a2.status == VerdictStatus::Invalid);
    REQUIRE(a2.counterexample);
    const Counterexample& cex = *a2.counterexample;
    CHECK(cex.identities == std::vector<int>{0, 1});
    CHECK(cex.kind == FailureKind::Postcondition);
    CHECK(cex.clause == "s1.is_equal(s2)");
    REQUIRE(cex.steps.size() == 2);
    CHECK(cex.steps[1].is_masked(0));
    CHECK(cex.steps[1].slots[1] == Value::boolean(true));
    CHECK(cex.narrative.back() == "post s1.is_equal(s2) violated");
    CHECK(testing::find(r, "remove_is_well_defined").status == VerdictStatus::Invalid);
    CHECK_FALSE(r.correct);
    CHECK_FALSE(r.complete);
    CHECK(exit_code(r) == 1);
  }

  TEST_CASE("malicious contract also breaks the creator") {
    CompletenessReport r = run("stack_malicious.ct");
    CHECK(testing::find(r, "new_is_well_defined").status == VerdictStatus::Invalid);
    CHECK(testing::find(r, "axiom_A2").status == VerdictStatus::Invalid);
  }

  TEST_CASE("model contract is complete") {
    CompletenessReport r = run("stack_model.ct");
    CHECK(r.all().size() == 12);
    for (const auto* v : r.all()) {
      CAPTURE(v->driver);
      CHECK(v->status == VerdictStatus::Valid);
      CHECK_FALSE(v->vacuous);
    }
    CHECK(r.correct);
    CHECK(r.well_defined);
    CHECK(r.complete);
    CHECK(exit_code(r) == 0);
  }

  TEST_CASE("serial and parallel kernels agree") {
    AdtSpec a = testing::adt();
    for (const char* ct : {"stack_weak.ct", "stack_model.ct", "stack_model_prefix_equality.ct"}) {
      ContractClass c = testing::contract(ct);
      const StateSpace sp = state_space(c, {2, 3});
      for (const auto& d : generate_drivers(a, c).all()) {
        CAPTURE(ct);
        CAPTURE(d.name);
        DriverVerdict serial = check_driver_serial(d, sp, {{2, 3}});
        CHECK(same(serial, check_driver(d, sp, {{2, 3}, 10'000'000, 1})));
        CHECK(same(serial, check_driver(d, sp, {{2, 3}, 10'000'000, 4})));
      }
    }
  }

  TEST_CASE("reports are deterministic") {
    AdtSpec a = testing::adt();
    ContractClass c = testing::contract("stack_weak.ct");
    DriverSuite s = generate_drivers(a, c);
    const std::string first = report_to_json(check_completeness(a, c, s, {{2, 3}}), s, c).dump();
    CHECK(report_to_json(check_completeness(a, c, s, {{2, 3}, 10'000'000, 3}), s, c).dump() == first);
  }

  TEST_CASE("contradictory precondition is vacuous") {
    ContractClass c = testing::contract("stack_weak.ct");
    auto d = parse_driver("axiom_V1 (s: STACK[G])\n  require\n    s.is_empty\n    not s.is_empty\n  do\n    s.remove\n"
                          "  ensure\n    s.is_empty\n  end\n",
                          c);
    REQUIRE(d.ok());
    DriverVerdict v = check_driver(d.value(), c, {{2, 2}});
    CHECK(v.status == VerdictStatus::Valid);
    CHECK(v.vacuous);
    CHECK(v.stats.environments == 0);
  }

  TEST_CASE("violated callee precondition") {
    ContractClass c = testing::contract("stack_weak.ct");
    auto d = parse_driver("axiom_P1 (s: STACK[G])\n  do\n    s.remove\n  ensure\n    s.is_empty\n  end\n", c);
    REQUIRE(d.ok());
    DriverVerdict v = check_driver(d.value(), c, {{2, 2}});
    CHECK(v.status == VerdictStatus::PreconditionUnprovable);
    REQUIRE(v.counterexample);
    CHECK(v.counterexample->kind == FailureKind::CalleePrecondition);
    CHECK(v.counterexample->clause == "p1: not is_empty");
    CHECK(replay_counterexample(*v.counterexample, d.value(), c, {2, 2}));
  }

  TEST_CASE("infeasible call") {
    ContractClass c = testing::contract("stack_weak.ct");
    ExprScope scope;
    scope.cls = &c;
    scope.allow_old = true;
    scope.params = c.features[0].params;
    c.features[0].ensure.push_back({"", parse_expr("is_empty", scope).value()});
    DriverSet ax = gen_axiom_drivers(testing::adt(), c);
    DriverVerdict v = check_driver(ax[0], c, {{2, 2}});
    CHECK(v.status == VerdictStatus::InfeasibleCall);
    REQUIRE(v.counterexample);
    CHECK(v.counterexample->kind == FailureKind::InfeasibleCall);
    CHECK(replay_counterexample(*v.counterexample, ax[0], c, {2, 2}));
  }

  TEST_CASE("extend at the length bound is pruned") {
    ContractClass c = testing::contract("stack_model.ct");
    DriverVerdict v = check_driver(gen_axiom_drivers(testing::adt(), c)[0], c, {{2, 2}});
    CHECK(v.status == VerdictStatus::Valid);
    CHECK(v.stats.pruned == 8);
    CHECK(v.stats.environments == 14);
    CHECK_FALSE(v.vacuous);
  }

  TEST_CASE("fully pruned drivers are vacuous") {
    ContractClass c = testing::contract("stack_model.ct");
    DriverVerdict v = check_driver(gen_axiom_drivers(testing::adt(), c)[0], c, {{2, 0}});
    CHECK(v.status == VerdictStatus::Valid);
    CHECK(v.stats.pruned == v.stats.branches);
    CHECK(v.vacuous);
  }

  TEST_CASE("A2 counterexample replays and mismatches are detected") {
    AdtSpec a = testing::adt();
    ContractClass weak = testing::contract("stack_weak.ct");
    const SpecDriver a2 = gen_axiom_drivers(a, weak)[1];
    DriverVerdict v = check_driver(a2, weak, {{2, 3}});
    REQUIRE(v.counterexample);
    CHECK(replay_counterexample(*v.counterexample, a2, weak, {2, 3}));

    Counterexample tampered = *v.counterexample;
    tampered.steps[1] = tampered.steps[0];
    CHECK_FALSE(replay_counterexample(tampered, a2, weak, {2, 3}));

    Counterexample wrong_identity = *v.counterexample;
    wrong_identity.identities = {0, 7};
    CHECK_THROWS_AS(replay_counterexample(wrong_identity, a2, weak, {2, 3}), Error);

    ContractClass model = testing::contract("stack_model.ct");
    const SpecDriver model_a2 = gen_axiom_drivers(a, model)[1];
    const Json j = counterexample_to_json(*v.counterexample, a2, weak);
    try {
      (void)counterexample_from_json(j, model_a2, model);
      FAIL("expected a stale trace");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::StaleTrace);
    }
  }

  TEST_CASE("a trace that does not fail is rejected") {
    ContractClass model = testing::contract("stack_model.ct");
    const SpecDriver refl = equivalence_templates(testing::adt(), model)[0];
    Counterexample cex;
    cex.driver = refl.name;
    cex.bounds = {2, 2};
    cex.identities = {0};
    ObjectState s;
    s.slots = {Value::sequence({}), Value::element(0), Value::boolean(true)};
    normalize_state(model, s);
    cex.initial = {s};
    cex.clause = "s.is_equal(s)";
    CHECK_FALSE(replay_counterexample(cex, refl, model, {2, 2}));
  }

  TEST_CASE("counterexamples survive a JSON round trip") {
    ContractClass weak = testing::contract("stack_weak.ct");
    const SpecDriver a2 = gen_axiom_drivers(testing::adt(), weak)[1];
    DriverVerdict v = check_driver(a2, weak, {{2, 3}});
    REQUIRE(v.counterexample);
    const Json j = counterexample_to_json(*v.counterexample, a2, weak);
    Counterexample back = counterexample_from_json(parse_trace(j.dump()), a2, weak);
    CHECK(back.identities == v.counterexample->identities);
    CHECK(back.params == v.counterexample->params);
    CHECK(back.initial == v.counterexample->initial);
    CHECK(back.steps == v.counterexample->steps);
    CHECK(back.index == v.counterexample->index);
    CHECK(back.clause == v.counterexample->clause);
    CHECK(replay_counterexample(back, a2, weak, {2, 3}));
    CHECK(counterexample_to_json(back, a2, weak) == j);
  }

  TEST_CASE("malformed traces") {
    ContractClass weak = testing::contract("stack_weak.ct");
    const SpecDriver a2 = gen_axiom_drivers(testing::adt(), weak)[1];
    auto code = [&](const std::string& text) {
      try {
        (void)counterexample_from_json(parse_trace(text), a2, weak);
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::SyntaxError;
    };
    CHECK(code("{\"driver\": \"axiom_A2\"") == ErrorCode::MalformedTrace);
    CHECK(code("[]") == ErrorCode::MalformedTrace);
    CHECK(code("{\"driver\": \"axiom_A2\"}") == ErrorCode::MalformedTrace);
    CHECK(code("{\"driver\": \"axiom_A9\"}") == ErrorCode::StaleTrace);
  }

  TEST_CASE("branch cap yields resource_limit") {
    ContractClass weak = testing::contract("stack_weak.ct");
    const SpecDriver trans = equivalence_templates(testing::adt(), weak)[2];
    DriverVerdict v = check_driver(trans, weak, {{2, 3}, 4});
    CHECK(v.status == VerdictStatus::ResourceLimit);
    CHECK(v.stats.branches == 4);
    CHECK(v.stats.environments == 15);
    CHECK_FALSE(v.counterexample);
    CHECK(same(v, check_driver_serial(trans, state_space(weak, {2, 3}), {{2, 3}, 4})));
  }

  TEST_CASE("zero element domain is bounds_too_small") {
    CompletenessReport r = run("stack_model.ct", {0, 2});
    for (const auto* v : r.all()) CHECK(v->status == VerdictStatus::BoundsTooSmall);
    CHECK(exit_code(r) == 3);
  }

  TEST_CASE("exit code precedence") {
    CompletenessReport r;
    r.equivalence_required = false;
    r.axioms = {with_status(VerdictStatus::Valid)};
    r.correct = r.well_defined = r.complete = true;
    CHECK(exit_code(r) == 0);
    r.axioms.push_back(with_status(VerdictStatus::ResourceLimit));
    CHECK(exit_code(r) == 5);
    r.axioms.push_back(with_status(VerdictStatus::PreconditionUnprovable));
    CHECK(exit_code(r) == 1);
    r.axioms.push_back(with_status(VerdictStatus::InfeasibleCall));
    CHECK(exit_code(r) == 3);

    CompletenessReport e;
    e.correct = e.well_defined = e.complete = true;
    e.equivalence = {with_status(VerdictStatus::Invalid, DriverFamily::Equivalence)};
    CHECK(exit_code(e) == 0);
    e.equivalence_required = true;
    CHECK(exit_code(e) == 1);
  }

  TEST_CASE("JSON report shape") {
    AdtSpec a = testing::adt();
    ContractClass c = testing::contract("stack_weak.ct");
    DriverSuite s = generate_drivers(a, c);
    const Json j = report_to_json(check_completeness(a, c, s, {{2, 3}}), s, c);
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["verdict"]["complete"] == false);
    CHECK(j["drivers"].size() == 12);
    CHECK(j["drivers"][1]["status"] == "invalid");
    CHECK(j["drivers"][1]["counterexample"]["failure"]["kind"] == "postcondition");
    CHECK(j["drivers"][0]["counterexample"].is_null());
    CHECK(j["exit_code"] == 1);
  }
}
