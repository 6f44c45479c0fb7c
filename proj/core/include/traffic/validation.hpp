#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "traffic/params.hpp"

namespace traffic::validation {

struct SuiteResult {
  std::string name;
  bool passed = false;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

/// Parameter invariants (alpha > 1, tau > 0, ...).
SuiteResult parameters_suite(const ModelParams& p);

/// Orthonormality of the velocity polynomials against the gamma weight,
/// n, m <= 5, at alpha and at alpha = 5; tolerance 1e-10.
SuiteResult orthonormality_suite(const ModelParams& p);

/// Quadrature moments of the closure distributions against their closed
/// forms for alpha in {5, 50, 125}; gradient-correction moments 0 and 1
/// vanish; corrected second moment matches the pressure relation.
SuiteResult moment_suite(const ModelParams& p);

/// First iterate of the moment system equals the gradient-expansion pressure
/// deviator to 1e-12 relative over a 10^4-point (rho, v, dv_dx) grid.
SuiteResult ce_grad_suite(const ModelParams& p);

/// Interface-solver identities on random state pairs: dF = A(Ubar) dU, wave
/// reconstruction of dU, and flux consistency F(U, U) = F(U).
SuiteResult roe_suite(const ModelParams& p);

std::vector<SuiteResult> run_all_suites(const ModelParams& p);

/// One record per suite: `suite=<name> status=<pass|fail> max_error=<v>
/// tolerance=<v> detail="..."`.
void write_report(const std::vector<SuiteResult>& results, std::ostream& os);

}  // namespace traffic::validation
