#pragma once

#include <string>
#include <vector>

namespace submod {

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the built-in invariant checks at reduced trial counts (a few seconds).
/// A check that throws is reported as failed with the exception text.
std::vector<SelftestCheck> run_selftest(unsigned threads = 1);

}  // namespace submod
