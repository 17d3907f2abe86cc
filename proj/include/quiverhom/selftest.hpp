#pragma once

#include <ostream>

#include "quiverhom/approx.hpp"
#include "quiverhom/fixtures.hpp"

namespace qh {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
  double ms = 0;
};

struct SelftestOptions {
  u32 p = 101;       // field for the exact computations
  u32 p_enum = 2;    // field for enumeration-heavy checks
  uint64_t seed = 20240101;
  int cutoff = 12;
  int eval_cases = 200;  // random modules per fixture in the identity suite
};

// Runs the whole acceptance battery; one result per criterion.
std::vector<CriterionResult> run_acceptance(const SelftestOptions& opt,
                                            std::ostream* progress);

// Deterministic verdict battery over every fixture (profiles, conditions,
// dominant numbers). Used for the determinism criterion and for the CLI.
std::string verdict_fingerprint(const SelftestOptions& opt, u32 field);

// Machine rendering: one line per criterion, no timings.
std::string machine_report(const std::vector<CriterionResult>& rs);

}  // namespace qh
