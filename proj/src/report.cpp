#include "ckbench/report.hpp"

namespace ckb {

void CheckReport::merge(const CheckReport& other) {
  checks += other.checks;
  for (const auto& f : other.failures) failures.push_back(other.name.empty() ? f : other.name + ": " + f);
}

std::string CheckReport::summary() const {
  return name + ": " + std::to_string(checks) + " checks, " + std::to_string(failures.size()) + " failed";
}

}  // namespace ckb
