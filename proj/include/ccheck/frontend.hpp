#pragma once

// Text formats: `.adt` specifications, `.ct` contract files, and the
// require/do/ensure driver listing.

#include <string>
#include <string_view>

#include "ccheck/adt.hpp"
#include "ccheck/contract.hpp"
#include "ccheck/driver.hpp"

namespace ccheck {

/// Parses and validates an ADT specification.
Parsed<AdtSpec> parse_adt(std::string_view text, std::string_view file = {});

/// Parses a contract file and type-checks every expression.
Parsed<ContractClass> parse_contract(std::string_view text, std::string_view file = {});

/// Parses one driver in the listing format and resolves it against `cls`.
Parsed<SpecDriver> parse_driver(std::string_view text, const ContractClass& cls,
                                std::string_view file = {});

/// Parses a whole listing (drivers separated by blank lines are fine).
Parsed<DriverSet> parse_drivers(std::string_view text, const ContractClass& cls,
                                std::string_view file = {});

/// Parses a single expression against `scope` (for tests and tooling).
Parsed<Expr> parse_expr(std::string_view text, const ExprScope& scope,
                        std::optional<ValueType> expected = ValueType::Bool);

std::string pretty_print(const AdtSpec& adt);
std::string pretty_print(const ContractClass& cls);
std::string pretty_print(const SpecDriver& d);
std::string pretty_print(const DriverSet& drivers);

/// Reads a whole file; throws Error(FileNotFound).
std::string read_file(const std::string& path);

}  // namespace ccheck
