#pragma once

#include <memory>
#include <string>

#include "fusionkit/group.hpp"
#include "fusionkit/translink.hpp"

namespace test {

inline std::string group_path(const std::string& name) {
  return std::string(FUSIONKIT_DATA_DIR) + "/groups/" + name + ".gens";
}

inline fusionkit::FiniteGroup load(const std::string& name) {
  return fusionkit::load_group(group_path(name));
}

inline std::shared_ptr<const fusionkit::FusionSystem> fusion_of(const std::string& name, unsigned p) {
  return std::make_shared<const fusionkit::FusionSystem>(
      std::make_shared<const fusionkit::FiniteGroup>(load(name)), p);
}

inline std::string failures(const fusionkit::AxiomReport& r) {
  std::string out;
  for (const auto& a : r)
    if (!a.pass) out += a.name + ": " + a.witness + "\n";
  return out;
}

}  // namespace test
