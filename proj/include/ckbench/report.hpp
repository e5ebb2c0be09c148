#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace ckb {

// Outcome of a verification sweep. A failure carries a printable witness.
struct CheckReport {
  std::string name;
  std::size_t checks = 0;
  std::vector<std::string> failures;

  CheckReport() = default;
  explicit CheckReport(std::string report_name) : name(std::move(report_name)) {}

  bool passed() const { return failures.empty(); }

  template <class Witness>
  bool expect(bool ok, Witness&& witness) {
    ++checks;
    if (!ok) failures.push_back(witness());
    return ok;
  }
  void merge(const CheckReport& other);
  std::string summary() const;
};

}  // namespace ckb
