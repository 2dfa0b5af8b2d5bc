#pragma once

#include <cstddef>
#include <deque>
#include <string>
#include <vector>

namespace conemeans {

/// Outcome of one named check. Failures carry a human-readable witness.
struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::string witness;
  std::string note;

  void fail(std::string w) {
    if (passed) witness = std::move(w);
    passed = false;
  }
};

struct Report {
  std::string subject;
  std::deque<CheckResult> checks;

  CheckResult& add(const std::string& name) {
    CheckResult c;
    c.name = name;
    checks.push_back(std::move(c));
    return checks.back();
  }
  CheckResult& get(const std::string& name) {
    for (auto& c : checks)
      if (c.name == name) return c;
    return add(name);
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

}  // namespace conemeans
