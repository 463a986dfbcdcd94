#pragma once

#include <string>
#include <vector>

namespace tfh::cli {

struct CheckEntry {
  std::string check;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CheckReport {
  int schema_version = 1;
  std::vector<CheckEntry> checks;

  void add(const std::string& name, double measured, double tolerance) {
    checks.push_back({name, measured, tolerance, measured <= tolerance});
  }
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

std::string report_to_json(const CheckReport& report);

}  // namespace tfh::cli
