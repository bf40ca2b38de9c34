#pragma once

// Corpus-wide property checks shared by the unit tests and the acceptance
// binary. Each returns a description of every violation; empty means pass.

#include <string>
#include <vector>

#include "ccheck/checker.hpp"

namespace criteria {

using Failures = std::vector<std::string>;

extern const std::vector<std::string> kAdtFiles;
extern const std::vector<std::string> kContractFiles;

std::string corpus(const std::string& name);
ccheck::AdtSpec load_adt(const std::string& name);
ccheck::ContractClass load_contract(const std::string& name);

/// Oracle and checker agree on every (driver, contract) pair for k in 1..kmax, L in 0..lmax.
Failures oracle_mismatches(int kmax, int lmax);

/// Every invalid counterexample replays at `b`, and at (k+1, L+1) when `grown`.
Failures replay_failures(ccheck::Bounds b, bool grown);

/// Extra postcondition clauses never turn a valid driver invalid.
Failures strengthening_failures(ccheck::Bounds b);

/// The default (component-wise) equality is an equivalence over all states.
Failures equivalence_law_failures(ccheck::Bounds b);

/// print(parse(file)) parses back to the same structure and prints identically.
Failures round_trip_failures();

}  // namespace criteria
