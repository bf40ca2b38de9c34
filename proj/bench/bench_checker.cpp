// Serial reference versus OpenMP checker on the model-based stack contract.

#include <benchmark/benchmark.h>

#include <string>

#include "ccheck/checker.hpp"
#include "ccheck/frontend.hpp"

namespace {

using namespace ccheck;

struct Fixture {
  AdtSpec adt;
  ContractClass cls;
  DriverSuite suite;

  Fixture() {
    const std::string dir = CCHECK_CORPUS_DIR;
    adt = parse_adt(read_file(dir + "/stack.adt")).value();
    cls = parse_contract(read_file(dir + "/stack_model.ct")).value();
    suite = generate_drivers(adt, cls);
  }

  const SpecDriver& driver(const std::string& name) const {
    for (const auto* set : {&suite.axioms, &suite.equivalence, &suite.well_definedness})
      for (const auto& d : *set)
        if (d.name == name) return d;
    throw std::runtime_error("no driver " + name);
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void run(benchmark::State& state, const char* name, bool parallel) {
  const Fixture& f = fixture();
  CheckOptions opt;
  opt.bounds = {int(state.range(0)), int(state.range(1))};
  opt.threads = parallel ? 0 : 1;
  const StateSpace space = state_space(f.cls, opt.bounds);
  const SpecDriver& d = f.driver(name);
  long long branches = 0;
  for (auto _ : state) {
    DriverVerdict v = parallel ? check_driver(d, space, opt) : check_driver_serial(d, space, opt);
    branches = v.stats.branches;
    benchmark::DoNotOptimize(v);
  }
  state.counters["states"] = double(space.size());
  state.counters["branches"] = double(branches);
}

void BM_TransitivitySerial(benchmark::State& s) { run(s, "equivalence_transitivity", false); }
void BM_TransitivityParallel(benchmark::State& s) { run(s, "equivalence_transitivity", true); }
void BM_AxiomA2Serial(benchmark::State& s) { run(s, "axiom_A2", false); }
void BM_AxiomA2Parallel(benchmark::State& s) { run(s, "axiom_A2", true); }

}  // namespace

BENCHMARK(BM_TransitivitySerial)->Args({2, 3})->Args({3, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TransitivityParallel)->Args({2, 3})->Args({3, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AxiomA2Serial)->Args({2, 3})->Args({3, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AxiomA2Parallel)->Args({2, 3})->Args({3, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
