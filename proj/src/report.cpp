#include "eqsk/report.hpp"

#include <algorithm>

#include "eqsk/error.hpp"

namespace eqsk {

bool ValidationReport::passed() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.passed; });
}

const AxiomResult* ValidationReport::first_failure() const {
  for (const auto& a : axioms)
    if (!a.passed) return &a;
  return nullptr;
}

const AxiomResult& ValidationReport::at(const std::string& axiom) const {
  for (const auto& a : axioms)
    if (a.axiom == axiom) return a;
  throw PreconditionError("report has no axiom named " + axiom);
}

}  // namespace eqsk
