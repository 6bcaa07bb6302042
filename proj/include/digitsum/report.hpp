#pragma once

#include "digitsum/types.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace digitsum {

/// One inequality (or identity) instance. defect = rhs - lhs; for an
/// inequality lhs <= rhs, holds means defect >= 0 (within real_tolerance when
/// real-valued); identity checks require defect == 0.
struct DefectReport {
  std::string inequality_id;
  std::vector<std::pair<std::string, Value>> inputs;
  Value lhs;
  Value rhs;
  Value defect;
  bool holds = false;
  std::string note;                                   // empty unless noteworthy
  std::vector<std::pair<std::string, Value>> extras;  // auxiliary quantities
};

/// Aggregate over a full grid sweep. min_defect is attained at argmin_witness
/// (lexicographically smallest among minimizers); violations lists the
/// lexicographically smallest offending inputs, capped.
struct ScanReport {
  std::string inequality_id;
  std::vector<std::pair<std::string, std::string>> grid;
  std::uint64_t instances_checked = 0;
  Value min_defect;
  std::vector<Natural> argmin_witness;
  std::uint64_t equality_count = 0;
  std::vector<std::vector<Natural>> violations;

  bool holds() const { return violations.empty(); }
};

/// Explicit tuple violating the r >= b + 1 extension of the tuple inequality:
/// r - b - 1 zeros, b ones, then b^x. margin = lhs - rhs > 0 for x >= 2.
struct CounterexampleWitness {
  Base b;
  std::uint64_t r = 0;
  std::uint64_t x = 0;
  std::vector<Natural> ns;
  Natural lhs;
  Natural rhs;
  Natural margin;
};

}  // namespace digitsum
