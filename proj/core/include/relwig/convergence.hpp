#pragma once

#include <optional>
#include <string>
#include <vector>

namespace relwig {

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least-squares fit of log(y) = slope * log(x) + intercept. Requires >= 2 positive points.
LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct ConvergenceReport {
  std::vector<double> parameters;
  std::vector<double> errors;
  std::vector<double> local_slopes;
  /// Absent when the error sequence is not monotone in the parameter.
  std::optional<LogLogFit> fit;
  /// "algebraic", "spectral" or "undefined".
  std::string classification;
};

/// Errors must shrink as the parameter shrinks; otherwise the report is
/// "undefined" and no slope is fitted. Local slopes that grow by more than
/// half along the refinement mark super-polynomial ("spectral") decay.
ConvergenceReport analyze_convergence(const std::vector<double>& parameters, const std::vector<double>& errors);

}  // namespace relwig
