#pragma once

#include <string>
#include <vector>

#include "cp3/quadrature.hpp"

namespace cp3 {

enum class CheckStatus { Pass, Fail, Unsupported };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Fail;
  double measured = 0.0;   // worst observed error for the check
  double threshold = 0.0;  // pinned pass bound
  double seconds = 0.0;
  std::string note;
};

struct VerifyOptions {
  unsigned seed = 20240817;
  QuadratureSpec spec{};
};

// Runs every cross-check backing the library: the finite-difference,
// explicit-bracket, principal-value and box-mode oracles plus the
// structural invariants. Failures are report entries, not exceptions.
std::vector<CheckResult> run_verification_suite(const VerifyOptions& opts = {});

bool all_passed(const std::vector<CheckResult>& report);

const char* to_string(CheckStatus s);

}  // namespace cp3
