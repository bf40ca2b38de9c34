#pragma once

// Contracted classes: features with pre/postconditions, model fields over a
// bounded sequence theory, an equality contract, and the finite abstract
// state semantics enumerated by the checker.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccheck/diagnostic.hpp"

namespace ccheck {

enum class ValueType { Bool, Elem, Int, Seq, Object };

std::string_view to_string(ValueType t);

/// Runtime value of an expression. `Undefined` results from partial
/// sequence operations (last of [], out-of-range index) and from reading a
/// query slot whose precondition does not hold.
struct Value {
  enum class Kind : std::uint8_t { Undefined, Bool, Elem, Int, Seq, Object };

  Kind kind = Kind::Undefined;
  std::int64_t scalar = 0;
  std::vector<int> seq;

  static Value undefined() { return {}; }
  static Value boolean(bool b) { return {Kind::Bool, b ? 1 : 0, {}}; }
  static Value element(int e) { return {Kind::Elem, e, {}}; }
  static Value integer(std::int64_t i) { return {Kind::Int, i, {}}; }
  static Value sequence(std::vector<int> s) { return {Kind::Seq, 0, std::move(s)}; }
  static Value object(int identity) { return {Kind::Object, identity, {}}; }

  bool is_undefined() const { return kind == Kind::Undefined; }
  bool truthy() const { return kind == Kind::Bool && scalar != 0; }

  friend bool operator==(const Value&, const Value&) = default;
  /// Canonical order: kind, then scalar, then sequences by length and
  /// lexicographically.
  friend bool operator<(const Value& a, const Value& b);
};

std::string to_string(const Value& v);

struct Expr {
  enum class Kind {
    // Produced by the parser, replaced during resolution.
    Ident,
    Member,
    // Resolved forms.
    BoolLit,
    IntLit,
    ElemLit,
    Current,
    Other,
    Object,     // driver object; number = object index
    Param,      // feature or driver element parameter; number = index
    Bound,      // across index; number = binding depth
    Result,
    Component,  // kids[0] = receiver; number = slot
    Old,
    Not,
    And,
    Or,
    Implies,
    Eq,
    Neq,
    Lt,
    Le,
    Gt,
    Ge,
    IsEqual,    // kids[0].is_equal(kids[1])
    Extended,   // kids[0].extended(kids[1])
    ButLast,
    Last,
    First,
    SeqIsEmpty,
    Count,
    Index,      // kids[0][kids[1]]
    Across,     // across kids[0] .. kids[1] as name all kids[2] end
  };

  Kind kind = Kind::BoolLit;
  std::string name;
  std::int64_t number = 0;
  ValueType type = ValueType::Bool;
  // `and then` / `or else`; for Component, written without a receiver;
  // for Member, written with an argument list; for Across, binder spelled.
  bool flag = false;
  std::vector<Expr> kids;
  SourcePos pos;

  // Structural equality ignores source positions.
  friend bool operator==(const Expr& a, const Expr& b) {
    return a.kind == b.kind && a.name == b.name && a.number == b.number &&
           a.type == b.type && a.flag == b.flag && a.kids == b.kids;
  }

  static Expr boolean(bool b);
  static Expr ident(std::string name, SourcePos pos = {});
  static Expr member(Expr receiver, std::string name, std::vector<Expr> args = {},
                     bool with_parens = false, SourcePos pos = {});
  static Expr unary(Kind k, Expr e, SourcePos pos = {});
  static Expr binary(Kind k, Expr a, Expr b, SourcePos pos = {});
};

std::string to_string(const Expr& e);

enum class FeatureKind { Command, Query };

struct Param {
  std::string name;
  ValueType type = ValueType::Elem;

  friend bool operator==(const Param&, const Param&) = default;
};

struct Clause {
  std::string label;  // may be empty
  Expr expr;

  friend bool operator==(const Clause&, const Clause&) = default;
};

struct Feature {
  std::string name;
  FeatureKind kind = FeatureKind::Command;
  std::vector<Param> params;
  ValueType result_type = ValueType::Bool;  // queries only
  std::vector<Clause> require;
  std::vector<Clause> ensure;
  SourcePos pos;

  friend bool operator==(const Feature& a, const Feature& b) {
    return a.name == b.name && a.kind == b.kind && a.params == b.params &&
           (a.kind == FeatureKind::Command || a.result_type == b.result_type) &&
           a.require == b.require && a.ensure == b.ensure;
  }
};

struct ModelField {
  std::string name;
  // Only SEQ[<parameter>] is supported.
  friend bool operator==(const ModelField&, const ModelField&) = default;
};

/// One component of the abstract state: a model field or a query slot.
struct Component {
  std::string name;
  ValueType type;
  bool is_model = false;
  int feature = -1;  // index into features for query slots
};

struct FeatureMapping {
  std::string adt_function;
  std::string feature;

  friend bool operator==(const FeatureMapping&, const FeatureMapping&) = default;
};

struct ContractClass {
  std::string name;
  std::string parameter;  // element sort, e.g. G
  std::vector<ModelField> model_fields;
  std::string creation_feature;
  std::vector<Feature> features;
  std::optional<Expr> equality;
  std::vector<FeatureMapping> mapping;

  const Feature* find_feature(std::string_view name) const;
  int feature_index(std::string_view name) const;
  /// State layout: model fields first, then queries in declaration order.
  std::vector<Component> components() const;
  int slot_of(std::string_view name) const;
  /// Class feature implementing the ADT function `adt_fn` (identity unless
  /// overridden by a `map` line).
  std::string feature_for(std::string_view adt_fn) const;

  friend bool operator==(const ContractClass&, const ContractClass&) = default;
};

/// Names visible to an expression.
struct ExprScope {
  const ContractClass* cls = nullptr;
  bool allow_old = false;
  std::optional<ValueType> result;  // set inside query postconditions
  bool allow_current = true;
  bool allow_other = false;
  std::vector<Param> params;
  std::vector<std::string> objects;  // driver objects
};

/// Resolves identifiers and member accesses, type-checks, and annotates
/// `e` in place. Throws Error(UnknownComponent) for unknown names and
/// Error(TypeError) for ill-typed expressions.
void resolve_expr(Expr& e, const ExprScope& scope, std::optional<ValueType> expected = ValueType::Bool);

/// Checks every expression of a freshly parsed class, resolving them.
Diagnostics validate_contract(ContractClass& cls);

struct Bounds {
  int k = 2;    // element domain size
  int len = 3;  // maximum model sequence length

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

struct ObjectState {
  std::vector<Value> slots;
  std::uint64_t masked = 0;  // bit i set: query slot i is outside its precondition
  int id = -1;               // index in the owning StateSpace, if any

  bool is_masked(int slot) const { return (masked >> slot) & 1u; }

  friend bool operator==(const ObjectState& a, const ObjectState& b) {
    return a.slots == b.slots && a.masked == b.masked;
  }
  friend bool operator<(const ObjectState& a, const ObjectState& b);
};

std::string to_string(const ObjectState& s, const ContractClass& cls);

struct StateSpace;

/// Everything an expression may read. `now`/`before` map object identities
/// to states (nullptr: object not yet created).
struct EvalContext {
  const ContractClass* cls = nullptr;
  const StateSpace* space = nullptr;  // enables the precomputed equality table
  std::span<const ObjectState* const> now;
  std::span<const ObjectState* const> before;
  std::span<const int> bindings;  // driver object index -> identity
  std::span<const Value> params;
  int current = -1;
  int other = -1;
  const Value* result = nullptr;
  bool undefined_seen = false;
  std::vector<std::int64_t> bound;
};

Value eval_expr(const Expr& e, EvalContext& ctx);

/// Evaluates a boolean expression; undefined counts as false.
bool holds(const Expr& e, EvalContext& ctx);

/// Evaluates the equality contract with Current = a, other = b; falls back
/// to component-wise comparison when the class declares none.
bool equality_holds(const ContractClass& cls, const ObjectState& a, const ObjectState& b);

/// Recomputes which query slots are masked and canonicalizes them.
void normalize_state(const ContractClass& cls, ObjectState& s);

/// True if every unmasked query satisfies its definitional postconditions.
bool satisfies_definitions(const ContractClass& cls, const ObjectState& s);

/// All admissible abstract states of `cls` within `bounds`, sorted
/// canonically, with the equality relation precomputed.
struct StateSpace {
  const ContractClass* cls = nullptr;
  Bounds bounds;
  std::vector<ObjectState> states;
  // Index of each state's model-field projection; -1 when the class has no
  // model fields.
  std::vector<int> model_key;
  std::vector<std::uint8_t> equal;  // states.size()^2, row-major

  std::size_t size() const { return states.size(); }
  bool equal_states(int a, int b) const { return equal[std::size_t(a) * states.size() + b] != 0; }
  /// Index of `s` (compared structurally), or -1.
  int index_of(const ObjectState& s) const;
  bool has_model() const { return !model_key.empty() && model_key[0] >= 0; }
};

/// Throws Error(EmptyStateSpace) if every valuation is filtered out.
StateSpace state_space(const ContractClass& cls, Bounds bounds);

/// True if `s` stays within the domain limits of `bounds`.
bool within_bounds(const ObjectState& s, const ContractClass& cls, Bounds bounds);

}  // namespace ccheck
