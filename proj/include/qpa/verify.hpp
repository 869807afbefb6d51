#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qpa {

struct SuiteResult {
  std::string name;
  bool passed = true;
  int checks = 0;
  /// First counterexample, empty on success.
  std::string detail;
  /// Short summary of what was measured (sample counts, residuals).
  std::string summary;
  double seconds = 0.0;
};

/// theorem3, normal-order, star, derivations, one-param, cocycle,
/// linebundle, equivariance, parse.
const std::vector<std::string>& suite_names();

/// Runs one named suite; throws PreconditionError for unknown names.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

}  // namespace qpa
