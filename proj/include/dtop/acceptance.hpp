#pragma once

// End-to-end acceptance checks. Each check measures one property of the
// library at a fixed tolerance and reports the measured values.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "dtop/sweep.hpp"

namespace dtop {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<std::pair<std::string, double>> measured;

  double value(const std::string& key) const;
};

struct AcceptanceOptions {
  /// Relative detuning applied to alpha in the sigma-constancy check. Any
  /// non-zero value turns the analytic family into a non-solution, so the
  /// check is expected to fail (negative control).
  double sigma_detune = 0.0;
  Execution execution = Execution::parallel;
};

CriterionResult check_skater(const AcceptanceOptions& opt);
CriterionResult check_sigma_constancy(const AcceptanceOptions& opt);
CriterionResult check_numeric_vs_analytic(const AcceptanceOptions& opt);
CriterionResult check_conservation(const AcceptanceOptions& opt);
CriterionResult check_flow_exponential(const AcceptanceOptions& opt);
CriterionResult check_inverse_relation(const AcceptanceOptions& opt);
CriterionResult check_reductions(const AcceptanceOptions& opt);
CriterionResult check_body_builder(const AcceptanceOptions& opt);

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {});

/// One line per criterion: `criterion=<id> name=<name> status=PASS|FAIL key=value ...`
void print_result(std::ostream& out, const CriterionResult& r);

}  // namespace dtop
