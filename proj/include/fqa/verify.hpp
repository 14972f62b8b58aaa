// Self-checks of the library's invariants on seeded random inputs, shared by
// the `verify` command and the test suite.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fqa::verify {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Suite names accepted by run_suite, "all" included.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite or d < 2.
std::vector<Check> run_suite(const std::string& suite, int d, std::uint64_t seed);

}  // namespace fqa::verify
