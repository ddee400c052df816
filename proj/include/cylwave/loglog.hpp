#pragma once

#include <cstddef>
#include <span>

namespace cylwave {

/// log y = intercept + slope * log x by ordinary least squares.
struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Root mean square of the log residuals.
  double residual = 0.0;
  std::size_t samples = 0;
};

/// Requires x > 0, y > 0 and at least two distinct x.
LogLogFit loglog_fit(std::span<const double> x, std::span<const double> y);

}  // namespace cylwave
