#pragma once

// Internal: builds a ValidationReport keeping the first witness per check.

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "eqsk/report.hpp"

namespace eqsk::detail {

class Recorder {
 public:
  explicit Recorder(std::vector<std::string> names) {
    for (auto& n : names) report_.axioms.push_back(AxiomResult{std::move(n), true, {}});
  }
  bool failed(const std::string& axiom) const { return !report_.at(axiom).passed; }
  void fail(const std::string& axiom, const nlohmann::json& witness) {
    for (auto& a : report_.axioms)
      if (a.axiom == axiom && a.passed) {
        a.passed = false;
        a.witness = witness.dump();
      }
  }
  ValidationReport take() { return std::move(report_); }

 private:
  ValidationReport report_;
};

}  // namespace eqsk::detail
