#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncalg/field.hpp"

namespace ncalg {

struct SuiteResult {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  /* analytic bound for the randomized checks in this suite, when any */
  std::optional<double> per_trial_failure_bound;
  std::vector<std::string> notes;  /* first few failure descriptions */
};

struct SelftestOptions {
  FieldSpec field{};  /* default prime */
  std::size_t trials = 8;
  std::uint64_t seed = 0;
};

/* Property suites over the configured field: linear algebra identities,
 * blow-up laws, certificate soundness, quiver/formula equivalences, and
 * serial-vs-parallel kernel agreement. Deterministic for fixed options. */
std::vector<SuiteResult> run_selftest(const SelftestOptions& opts);

inline bool all_passed(const std::vector<SuiteResult>& rs) {
  for (const auto& r : rs)
    if (r.failures != 0) return false;
  return true;
}

}  // namespace ncalg
