#pragma once

#include <string>
#include <vector>

#include "cscs/states.hpp"

namespace cscs {

struct CheckResult {
  std::string name;
  bool pass;
  double measured;
  double tolerance;
  std::string note;  // extra context, may be empty
};

// Operator-algebra suite: eigenvalue identity, commutator defects with
// boundary bookkeeping, adjointness, number spectrum, scaled-limit ratios.
std::vector<CheckResult> verify_algebra(const ModelParams& mp);

// Coherence axioms: weight positivity and assembly, moment identity,
// resolution defect, action round-trip, temporal stability, label continuity.
// The temporal and continuity checks run at the given label; moment_tol
// overrides the moment-identity tolerance.
std::vector<CheckResult> verify_axioms(const ModelParams& mp, int m,
                                       double s = 2.0, double gamma = 0.7,
                                       double moment_tol = 1e-8);

// Closed-form diagnostics: dual-path agreement, intelligent-state residuals,
// gamma invariance, exact-mode oracle agreement, boundary-correction audit.
// The randomized sub-suites use fixed seeds; the audit lines use mp.
std::vector<CheckResult> verify_closed_forms(const ModelParams& mp);

std::vector<CheckResult> verify_all(const ModelParams& mp, int m,
                                    double s = 2.0, double gamma = 0.7,
                                    double moment_tol = 1e-8);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace cscs
