#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncalg/json_io.hpp"

namespace ncalg {

/* Pick the working field from the two places it can be named. Both present
 * and disagreeing is a hard error; neither present falls back to the
 * default prime. */
FieldSpec resolve_field(const std::optional<FieldSpec>& embedded,
                        const std::optional<FieldSpec>& from_flags);

/* Report builders. Each returns the complete JSON report for one command:
 * canonical input echo, verdict, certificates, and the analytic per-trial
 * failure bound. Identical arguments produce byte-identical reports. */
json nullcone_report(const FieldSpec& fs, const json& pencil_json,
                     std::size_t trials, std::uint64_t seed);
json ncrank_report(const FieldSpec& fs, const json& pencil_json,
                   std::optional<std::size_t> dmax, std::size_t trials,
                   std::uint64_t seed);
json invertible_report(const FieldSpec& fs, const json& pencil_json,
                       std::size_t trials, std::uint64_t seed);
json rit_report(const FieldSpec& fs, const std::string& formula_text,
                std::size_t trials, std::uint64_t seed);
json hard_instance_report(const FieldSpec& fs, std::size_t d,
                          std::size_t trials, std::uint64_t seed);
json quiver_check_report(const FieldSpec& fs, const json& input,
                         std::size_t trials, std::uint64_t seed);
json quiver_pq_report(const FieldSpec& fs, const json& input,
                      std::size_t trials, std::uint64_t seed);
json bounds_report(std::uint64_t n, std::uint64_t m);
json selftest_report(const FieldSpec& fs, std::size_t trials,
                     std::uint64_t seed);

/* Re-verification of a serialized report. Every certificate the report
 * carries is recomputed from the echoed inputs through the serial reference
 * path and compared exactly; `checked` says whether the report carried
 * anything recomputable, `ok` that nothing disagreed. */
struct VerifyOutcome {
  bool ok = false;
  bool checked = false;
  std::vector<std::string> problems;
};

VerifyOutcome verify_report(const json& report);
json verify_outcome_to_json(const std::string& target_command,
                            const VerifyOutcome& v);

}  // namespace ncalg
