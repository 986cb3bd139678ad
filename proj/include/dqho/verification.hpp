#ifndef DQHO_VERIFICATION_HPP
#define DQHO_VERIFICATION_HPP

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

namespace dqho {

struct VerificationEntry {
  std::string identity;
  bool passed = false;
  std::string residual;       // printed residual polynomial or number
  double max_residual = 0.0;  // 0 for exact symbolic checks that pass
};

class VerificationReport {
 public:
  void add(VerificationEntry entry) { entries_.push_back(std::move(entry)); }

  // Numeric check: passes when residual <= tolerance.
  void add_numeric(std::string identity, double residual, double tolerance) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", residual);
    entries_.push_back({std::move(identity), residual <= tolerance, buf, residual});
  }

  void append(const VerificationReport& other) {
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  }

  const std::vector<VerificationEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  bool all_passed() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.passed; });
  }

  std::vector<VerificationEntry> failures() const {
    std::vector<VerificationEntry> out;
    std::copy_if(entries_.begin(), entries_.end(), std::back_inserter(out),
                 [](const auto& e) { return !e.passed; });
    return out;
  }

  const VerificationEntry* find(const std::string& identity) const {
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [&](const auto& e) { return e.identity == identity; });
    return it == entries_.end() ? nullptr : &*it;
  }

  // [{identity, status: "pass"|"fail", residual}, ...]
  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : entries_) {
      arr.push_back({{"identity", e.identity},
                     {"status", e.passed ? "pass" : "fail"},
                     {"residual", e.residual}});
    }
    return arr;
  }

 private:
  std::vector<VerificationEntry> entries_;
};

}  // namespace dqho

#endif  // DQHO_VERIFICATION_HPP
