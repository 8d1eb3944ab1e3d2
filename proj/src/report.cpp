#include "ugkms/report.hpp"

#include <algorithm>

namespace ugkms {

void Report::add(std::string name, bool pass, std::string witness) {
  lines_.push_back({std::move(name), pass, std::move(witness)});
}

void Report::add(const VerificationReport& r, const std::string& prefix) {
  for (const auto& c : r.conditions) {
    std::string w = c.witness;
    if (c.verdict == Verdict::PassAtDepth) w = "at-depth " + w;
    add(prefix + c.condition, c.verdict != Verdict::Fail, w);
  }
}

void Report::merge(const Report& other) { lines_.insert(lines_.end(), other.lines_.begin(), other.lines_.end()); }

bool Report::all_pass() const {
  return std::all_of(lines_.begin(), lines_.end(), [](const CheckLine& l) { return l.pass; });
}

std::vector<CheckLine> Report::lines() const {
  auto out = lines_;
  std::sort(out.begin(), out.end(), [](const CheckLine& a, const CheckLine& b) {
    return a.name != b.name ? a.name < b.name : a.witness < b.witness;
  });
  return out;
}

std::string Report::str() const {
  std::string out;
  for (const auto& l : lines()) {
    out += "CHECK " + l.name + (l.pass ? " PASS" : " FAIL");
    if (!l.witness.empty()) out += " " + l.witness;
    out += "\n";
  }
  return out;
}

}  // namespace ugkms
