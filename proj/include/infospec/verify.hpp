#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "infospec/serialization.hpp"

namespace infospec {

struct VerifyConfig {
  std::uint64_t seed = 7;
  int trials = 300;
  std::vector<int> dims{2, 3, 4};
  std::vector<double> eps_grid{0.1, 0.25, 0.5, 0.75, 0.9};
  bool strict = false;  // abort on first failing property
};

struct PropertyResult {
  std::string name;
  long trials = 0;
  long failures = 0;
  double worst_violation = 0.0;  // positive means the property was violated by that much
  double tolerance = 0.0;
  std::vector<std::uint64_t> failure_seeds;

  bool passed() const { return failures == 0; }
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;

  bool all_passed() const;
  long total_failures() const;
  Json to_json() const;
  std::string to_csv() const;
};

// Suites: core_lemmas, ds_properties, sandwich, classical, second_order,
// protocols, all.
VerificationReport run_verification(const std::string& suite, const VerifyConfig& config);

std::vector<std::string> verification_suites();

}  // namespace infospec
