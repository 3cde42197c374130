#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ssg {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct ReproOptions {
  std::uint64_t seed = 20240611;
  unsigned jobs = 1;
  std::uint64_t episodes = 100000;  // Monte Carlo episodes per check
};

inline constexpr int kNumCriteria = 10;

// Runs one acceptance check (1..10). Never throws: failures and exceptions
// both come back as pass = false with the reason in `detail`.
CriterionResult run_criterion(int id, const ReproOptions& options = {});

std::vector<CriterionResult> run_acceptance(
    const ReproOptions& options = {},
    const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace ssg
