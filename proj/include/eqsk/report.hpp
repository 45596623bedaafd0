#pragma once

#include <string>
#include <vector>

namespace eqsk {

struct AxiomResult {
  std::string axiom;
  bool passed = true;
  std::string witness;  // JSON, empty when passed
};

/// Pass/fail per named check, with the first counterexample of each failure.
struct ValidationReport {
  std::vector<AxiomResult> axioms;

  bool passed() const;
  /// nullptr when everything passed
  const AxiomResult* first_failure() const;
  const AxiomResult& at(const std::string& axiom) const;
};

}  // namespace eqsk
