#pragma once

#include <map>
#include <string>
#include <vector>

namespace rictube {

/// One verified condition.  Strict conditions need worst_margin > strict_tol;
/// non-strict ones tolerate worst_margin >= -1e-12.
struct ConditionEntry {
  std::string name;
  bool pass = false;
  double worst_margin = 0.0;
  double witness_r = 0.0;
  bool strict = true;
};

struct ConditionReport {
  std::vector<ConditionEntry> entries;
  std::vector<std::string> assumptions;   // asserted, never checked numerically
  std::map<std::string, double> notes;    // informational values, not verdicts

  bool all_pass() const;
  const ConditionEntry* find(const std::string& name) const;
  void add(ConditionEntry e) { entries.push_back(std::move(e)); }
  void merge(const ConditionReport& other, const std::string& prefix);
};

/// Margin bookkeeping: strict conditions pass when margin > strict_tol,
/// non-strict when margin >= -1e-12.  strict_tol defaults to 0.
struct Strictness {
  double strict_tol = 0.0;
  double slack = 1e-12;

  bool passes(double margin, bool strict) const {
    return strict ? margin > strict_tol : margin >= -slack;
  }
};

}  // namespace rictube
