#pragma once

#include <fstream>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "eqsk/group.hpp"

namespace test {

inline eqsk::GroupPtr group(const std::string& name) {
  return std::make_shared<const eqsk::FiniteGroup>(eqsk::fixtures::by_name(name));
}

inline nlohmann::json load(const std::string& file) {
  std::ifstream in(std::string(EQSK_TEST_DATA) + "/" + file);
  return nlohmann::json::parse(in);
}

}  // namespace test
