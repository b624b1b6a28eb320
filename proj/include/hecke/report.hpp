#pragma once

// Named pass/fail checks collected by the verifiers.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace hecke {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

class Report {
 public:
  void add(std::string name, bool pass, std::string detail = {}) {
    checks_.push_back({std::move(name), pass, std::move(detail)});
  }

  void append(const Report& other, const std::string& prefix = {}) {
    for (const auto& c : other.checks_) checks_.push_back({prefix + c.name, c.pass, c.detail});
  }

  bool ok() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
  }

  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(checks_.begin(), checks_.end(), [](const Check& c) { return !c.pass; }));
  }

  const std::vector<Check>& checks() const { return checks_; }

 private:
  std::vector<Check> checks_;
};

}  // namespace hecke
