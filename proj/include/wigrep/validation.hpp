#pragma once

#include <string>
#include <vector>

namespace wigrep {

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Named residual checks. The report passes iff every check passed.
class ValidationReport {
 public:
  void add(std::string name, double residual, double tolerance) {
    const bool ok = residual <= tolerance;
    checks_.push_back({std::move(name), residual, tolerance, ok});
  }
  // Check whose verdict is not a plain threshold comparison (ranks, counts).
  void add_verdict(std::string name, double residual, double tolerance, bool ok) {
    checks_.push_back({std::move(name), residual, tolerance, ok});
  }
  void merge(const ValidationReport& other, const std::string& prefix = {}) {
    for (const auto& c : other.checks_) checks_.push_back({prefix + c.name, c.residual, c.tolerance, c.passed});
  }

  bool passed() const {
    for (const auto& c : checks_)
      if (!c.passed) return false;
    return true;
  }
  double max_residual() const {
    double r = 0.0;
    for (const auto& c : checks_) r = c.residual > r ? c.residual : r;
    return r;
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks_)
      if (c.name == name) return &c;
    return nullptr;
  }
  const std::vector<Check>& checks() const { return checks_; }

 private:
  std::vector<Check> checks_;
};

}  // namespace wigrep
