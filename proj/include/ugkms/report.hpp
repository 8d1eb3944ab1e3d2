#pragma once

// `CHECK <name> PASS|FAIL <witness>` report lines.

#include <string>
#include <vector>

#include "ugkms/state_functions.hpp"

namespace ugkms {

struct CheckLine {
  std::string name;
  bool pass = true;
  std::string witness;
  auto operator<=>(const CheckLine&) const = default;
};

class Report {
 public:
  void add(std::string name, bool pass, std::string witness = {});
  /// One line per condition; PASS-AT-DEPTH counts as PASS and is noted in the witness.
  void add(const VerificationReport& r, const std::string& prefix = {});
  void merge(const Report& other);

  [[nodiscard]] bool all_pass() const;
  /// Sorted by name, then witness.
  [[nodiscard]] std::vector<CheckLine> lines() const;
  [[nodiscard]] std::string str() const;
  [[nodiscard]] int exit_code() const { return all_pass() ? 0 : 1; }

 private:
  std::vector<CheckLine> lines_;
};

}  // namespace ugkms
