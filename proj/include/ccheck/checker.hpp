#pragma once

// Bounded exhaustive checking of specification drivers. Every initial
// environment satisfying the driver precondition is explored; each call
// branches over all post-states its contract admits, and the driver
// postcondition must hold on every branch.

#include <optional>
#include <string>
#include <vector>

#include "ccheck/adt.hpp"
#include "ccheck/contract.hpp"
#include "ccheck/driver.hpp"

namespace ccheck {

// Declared in severity order: a driver reports the most severe event found.
enum class VerdictStatus {
  Valid,
  Invalid,
  PreconditionUnprovable,
  InfeasibleCall,
  ResourceLimit,
  BoundsTooSmall,
};

std::string_view to_string(VerdictStatus s);

enum class FailureKind { Postcondition, CalleePrecondition, InfeasibleCall };

std::string_view to_string(FailureKind k);

struct Counterexample {
  std::string driver;
  Bounds bounds;
  std::vector<int> identities;                      // driver object -> identity
  std::vector<Value> params;                        // driver element parameters
  std::vector<std::optional<ObjectState>> initial;  // per identity; empty until created
  std::vector<ObjectState> steps;                   // post-state of each completed call
  FailureKind kind = FailureKind::Postcondition;
  int index = 0;       // driver post clause, or the failing call
  std::string clause;  // text of the violated assertion
  std::vector<std::string> narrative;
};

struct CheckStats {
  long long environments = 0;  // initial environments satisfying the precondition
  long long branches = 0;      // complete execution paths
  // Branches cut because a call's only post-states exceed the length bound.
  long long pruned = 0;
};

struct DriverVerdict {
  std::string driver;
  DriverFamily family = DriverFamily::Axiom;
  VerdictStatus status = VerdictStatus::Valid;
  // Valid without a single fully checked path: no environment satisfies the
  // precondition, or every branch was pruned.
  bool vacuous = false;
  CheckStats stats;
  std::optional<Counterexample> counterexample;
};

struct CheckOptions {
  Bounds bounds;
  long long branch_cap = 10'000'000;
  // Worker threads; 0 reads CCHECK_THREADS and otherwise uses the OpenMP default.
  int threads = 0;
};

/// Parallel check over initial environments.
DriverVerdict check_driver(const SpecDriver& d, const StateSpace& space, const CheckOptions& opt = {});

/// Single-threaded reference implementation of check_driver.
DriverVerdict check_driver_serial(const SpecDriver& d, const StateSpace& space,
                                  const CheckOptions& opt = {});

/// Builds the state space and checks `d`; an empty space yields
/// BoundsTooSmall.
DriverVerdict check_driver(const SpecDriver& d, const ContractClass& cls, const CheckOptions& opt = {});

struct CompletenessReport {
  std::string adt;
  std::string cls;
  Bounds bounds;
  std::vector<DriverVerdict> axioms;
  std::vector<DriverVerdict> equivalence;
  std::vector<DriverVerdict> well_definedness;
  bool equivalence_required = false;
  bool correct = false;
  bool well_defined = false;
  bool complete = false;

  std::vector<const DriverVerdict*> all() const;
};

CompletenessReport check_completeness(const AdtSpec& adt, const ContractClass& cls,
                                      const CheckOptions& opt = {});

/// Same as above with drivers generated beforehand.
CompletenessReport check_completeness(const AdtSpec& adt, const ContractClass& cls,
                                      const DriverSuite& suite, const CheckOptions& opt = {});

/// Re-executes `cex` without search. True iff it still witnesses the
/// recorded failure. Throws Error(StaleTrace) when the trace does not fit
/// the class or a state is inadmissible under `bounds`.
bool replay_counterexample(const Counterexample& cex, const SpecDriver& d, const ContractClass& cls,
                           Bounds bounds);

/// Step-by-step description of a trace.
std::vector<std::string> narrate(const Counterexample& cex, const SpecDriver& d, const ContractClass& cls);

/// Resolves CheckOptions::threads.
int effective_threads(int requested);

}  // namespace ccheck
