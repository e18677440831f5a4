#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "soergel/realization.hpp"

namespace soergel {

inline constexpr std::uint64_t kDefaultSeed = 0x50E26E1;

enum class CheckStatus { Pass, Fail, Skipped };
const char* status_name(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;      // counts on success, reason when skipped
  nlohmann::json witness;  // first counterexample on failure, reason object when skipped
  double seconds = 0;
};

struct VerifyOptions {
  std::uint64_t seed = kDefaultSeed;
  int degree_bound = 12;     // Hom range and truncation checks
  int random_pairs = 40;     // seeded random samples per check
};

// Fixed acceptance runs, numbered from 1. Each picks its own presets and fields.
int acceptance_count();
std::string acceptance_name(int n);
CheckResult run_acceptance(int n, const VerifyOptions& opt);

// Property suites on one realization: "coxeter", "hecke", "schubert", "bimod", "acceptance" or "all".
std::vector<std::string> suite_names();
std::vector<CheckResult> run_suite(const std::string& suite, const Realization& r, const VerifyOptions& opt);

bool report_passed(const std::vector<CheckResult>& results);
nlohmann::json report_json(const std::vector<CheckResult>& results, bool with_timing);

}  // namespace soergel
