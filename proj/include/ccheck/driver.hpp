#pragma once

// Specification drivers: proof obligations made of declared objects,
// precondition assertions, a call sequence and postcondition assertions.
// Generated from ADT axioms, from the equivalence laws, and from the
// well-definedness of every ADT function.

#include <string>
#include <vector>

#include "ccheck/adt.hpp"
#include "ccheck/contract.hpp"

namespace ccheck {

enum class DriverFamily { Axiom, Equivalence, WellDefinedness };

std::string_view to_string(DriverFamily f);

struct DriverObject {
  std::string name;
  bool created = false;  // declared local, brought to life by a creation call

  friend bool operator==(const DriverObject&, const DriverObject&) = default;
};

struct Call {
  int target = 0;  // index into SpecDriver::objects
  std::string feature;
  std::vector<Expr> args;
  bool creation = false;

  friend bool operator==(const Call&, const Call&) = default;
};

struct SpecDriver {
  std::string name;
  DriverFamily family = DriverFamily::Axiom;
  // Axiom label, equivalence property, or feature name.
  std::string origin;
  std::string object_type;   // e.g. STACK[G]
  std::string element_type;  // e.g. G
  std::vector<DriverObject> objects;
  std::vector<Param> params;
  std::vector<Expr> pre;
  std::vector<Call> body;
  std::vector<Expr> post;

  int object_index(std::string_view name) const;
  /// True if any assertion compares objects with is_equal.
  bool uses_is_equal() const;
  /// Object pairs asserted distinct by a top-level `a /= b` precondition.
  std::vector<std::pair<int, int>> distinct_pairs() const;
  ExprScope scope(const ContractClass& cls) const;

  friend bool operator==(const SpecDriver&, const SpecDriver&) = default;
};

using DriverSet = std::vector<SpecDriver>;

/// Resolves every expression of `d` against `cls` and checks call targets,
/// features and arities. Throws Error(UnmappedFunction / TypeError ...).
void resolve_driver(SpecDriver& d, const ContractClass& cls);

/// Translates one axiom into a driver named `axiom_<label>`. Throws
/// Error(UnsupportedAxiomShape) or Error(UnmappedFunction).
SpecDriver translate_axiom(const Axiom& ax, const AdtSpec& adt, const ContractClass& cls);

/// One driver per axiom, in axiom order.
DriverSet gen_axiom_drivers(const AdtSpec& adt, const ContractClass& cls);

/// The reflexivity, symmetry and transitivity drivers.
DriverSet equivalence_templates(const AdtSpec& adt, const ContractClass& cls);

/// The equivalence drivers when some axiom driver uses is_equal (or when
/// forced); empty otherwise.
DriverSet gen_equivalence_drivers(const AdtSpec& adt, const ContractClass& cls,
                                  const DriverSet& axiom_drivers, bool force = false);

/// One `<feature>_is_well_defined` driver per ADT function, in ADT order.
DriverSet gen_well_definedness_drivers(const AdtSpec& adt, const ContractClass& cls);

struct DriverSuite {
  DriverSet axioms;
  DriverSet equivalence;
  DriverSet well_definedness;
  bool equivalence_required = false;

  DriverSet all() const;
};

/// All three families. Equivalence drivers are always generated here;
/// `equivalence_required` records whether the axiom drivers use is_equal.
DriverSuite generate_drivers(const AdtSpec& adt, const ContractClass& cls);

}  // namespace ccheck
