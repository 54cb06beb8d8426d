#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pellclass/arith.hpp"

namespace pellclass {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SelftestOptions {
  u64 oracle_x = 200;  // enumeration and class-number oracles
  u64 charsum_m_max = 120;
  u64 charsum_u_max = 20;
  u64 ni_u_max = 300;
  unsigned threads = 1;
};

/// Worked examples of every module followed by the exactness suites.
/// `progress` (optional) is called after each check.
std::vector<CheckResult> run_selftest(const SelftestOptions& options = {},
                                      const std::function<void(const CheckResult&)>& progress = {});

}  // namespace pellclass
