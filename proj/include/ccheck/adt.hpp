#pragma once

// Abstract data type specifications: sorts, function signatures, partial
// function preconditions and equational axioms.

#include <optional>
#include <string>
#include <vector>

#include "ccheck/diagnostic.hpp"

namespace ccheck {

enum class SortKind { Principal, Parameter, Boolean };

struct Sort {
  std::string name;
  SortKind kind = SortKind::Parameter;

  friend bool operator==(const Sort&, const Sort&) = default;
};

Sort boolean_sort();

enum class FunctionKind { Unclassified, Creator, Transformer, Observer };

std::string_view to_string(FunctionKind kind);

struct FunctionSig {
  std::string name;
  std::vector<Sort> arg_sorts;
  Sort result_sort;
  bool partial = false;
  FunctionKind kind = FunctionKind::Unclassified;
  SourcePos pos;

  friend bool operator==(const FunctionSig& a, const FunctionSig& b) {
    return a.name == b.name && a.arg_sorts == b.arg_sorts &&
           a.result_sort == b.result_sort && a.partial == b.partial &&
           a.kind == b.kind;
  }
};

struct TypedVar {
  std::string name;
  Sort sort;

  friend bool operator==(const TypedVar&, const TypedVar&) = default;
};

struct Term {
  enum class Kind { Variable, Application, Negation, Equation };

  Kind kind = Kind::Variable;
  // Variable name or applied function name.
  std::string name;
  // Variable sort; for applications, filled in by validation.
  Sort sort;
  std::vector<Term> args;
  SourcePos pos;

  static Term variable(std::string name, Sort sort = {}, SourcePos pos = {});
  static Term apply(std::string fn, std::vector<Term> args, SourcePos pos = {});
  static Term negate(Term t, SourcePos pos = {});
  static Term equation(Term lhs, Term rhs, SourcePos pos = {});

  // Structural equality ignores source positions.
  friend bool operator==(const Term& a, const Term& b) {
    return a.kind == b.kind && a.name == b.name && a.sort == b.sort &&
           a.args == b.args;
  }
};

struct Precondition {
  std::string function;
  std::vector<TypedVar> formal_vars;
  Term condition;
  SourcePos pos;

  friend bool operator==(const Precondition& a, const Precondition& b) {
    return a.function == b.function && a.formal_vars == b.formal_vars &&
           a.condition == b.condition;
  }
};

struct Axiom {
  std::string label;
  std::vector<TypedVar> universals;
  Term body;
  SourcePos pos;

  friend bool operator==(const Axiom& a, const Axiom& b) {
    return a.label == b.label && a.universals == b.universals &&
           a.body == b.body;
  }
};

struct AdtSpec {
  std::string name;  // e.g. STACK
  std::string parameter;  // e.g. G
  std::vector<Sort> sorts;
  std::vector<FunctionSig> functions;
  std::vector<Precondition> preconditions;
  std::vector<Axiom> axioms;

  const Sort& principal() const;
  const FunctionSig* find_function(std::string_view name) const;
  const Precondition* find_precondition(std::string_view fn) const;
  const Sort* find_sort(std::string_view name) const;

  friend bool operator==(const AdtSpec&, const AdtSpec&) = default;
};

/// Classifies every function and sort-checks every term. Variables without
/// a sort are inferred from their argument position. On failure returns
/// diagnostics naming the offending function/axiom and its position.
Parsed<AdtSpec> validate_adt(AdtSpec raw);

/// Sort of a term over the symbols of `spec`; throws Error(UnsortedTerm)
/// when a symbol is unknown.
Sort term_sort(const Term& t, const AdtSpec& spec);

/// Variables of `t`, in first-occurrence order (with multiplicity when
/// `with_repeats`).
std::vector<TypedVar> term_variables(const Term& t, bool with_repeats = false);

std::string to_string(const Term& t);

}  // namespace ccheck
