#include <sstream>

#include "criteria.hpp"
#include "support.hpp"

using namespace ccheck;

namespace {

std::string joined(const criteria::Failures& f) {
  std::ostringstream out;
  for (const auto& s : f) out << s << '\n';
  return out.str();
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("invalid counterexamples replay") {
    for (Bounds b : {Bounds{1, 1}, Bounds{2, 2}, Bounds{2, 3}}) {
      const auto f = criteria::replay_failures(b, false);
      CHECK_MESSAGE(f.empty(), joined(f));
    }
  }

  TEST_CASE("counterexamples replay under larger bounds") {
    for (Bounds b : {Bounds{1, 1}, Bounds{2, 2}}) {
      const auto f = criteria::replay_failures(b, true);
      CHECK_MESSAGE(f.empty(), joined(f));
    }
  }

  TEST_CASE("stronger postconditions never break valid drivers") {
    const auto f = criteria::strengthening_failures({2, 2});
    CHECK_MESSAGE(f.empty(), joined(f));
  }

  TEST_CASE("default equality is an equivalence") {
    const auto f = criteria::equivalence_law_failures({2, 2});
    CHECK_MESSAGE(f.empty(), joined(f));
  }

  TEST_CASE("corpus files round-trip") {
    const auto f = criteria::round_trip_failures();
    CHECK_MESSAGE(f.empty(), joined(f));
  }
}
