#pragma once

#include <cstddef>

namespace bplab {

/// Result of every numerical integral: value, an error estimate (standard
/// error for Monte Carlo rules, refinement gap otherwise) and the number of
/// integrand evaluations spent.
struct Estimate {
  double value = 0.0;
  double err = 0.0;
  std::size_t n_evals = 0;
};

}  // namespace bplab
