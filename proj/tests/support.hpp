#pragma once

#include <doctest.h>

#include <string>

#include "ccheck/checker.hpp"
#include "ccheck/frontend.hpp"

namespace testing {

inline std::string corpus(const std::string& name) { return std::string(CCHECK_CORPUS_DIR) + "/" + name; }
inline std::string golden(const std::string& name) { return std::string(CCHECK_GOLDEN_DIR) + "/" + name; }

inline ccheck::AdtSpec adt(const std::string& name = "stack.adt") {
  auto p = ccheck::parse_adt(ccheck::read_file(corpus(name)), name);
  REQUIRE_MESSAGE(p.ok(), (p.diagnostics().empty() ? "" : p.diagnostics()[0].format()));
  return p.value();
}

inline ccheck::ContractClass contract(const std::string& name) {
  auto p = ccheck::parse_contract(ccheck::read_file(corpus(name)), name);
  REQUIRE_MESSAGE(p.ok(), (p.diagnostics().empty() ? "" : p.diagnostics()[0].format()));
  return p.value();
}

inline const ccheck::SpecDriver& find(const ccheck::DriverSet& set, const std::string& name) {
  for (const auto& d : set)
    if (d.name == name) return d;
  FAIL("no driver " << name);
  throw;
}

inline const ccheck::DriverVerdict& find(const ccheck::CompletenessReport& r, const std::string& name) {
  for (const auto* v : r.all())
    if (v->driver == name) return *v;
  FAIL("no verdict " << name);
  throw;
}

}  // namespace testing
