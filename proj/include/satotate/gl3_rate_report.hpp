#pragma once

// Rate-of-convergence report for N = 3 character monomials: the oracle a_0,
// the convergence envelope over a T-grid and, given a family, the measured
// |L_T(monomial) - a_0| next to it.

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "satotate/family_harness.hpp"
#include "satotate/gl3_error_bound.hpp"

namespace satotate {

struct RateRow {
  double t = 0.0;
  /// constant * convergence_error: (T^2 P^{1/2} + T^3 P^theta + P^{5/3}) T^{-5+eps} P^eps
  double envelope = 0.0;
  /// constant * orthogonality_error(T, P, theta, eps) / T^5; the (TP)^eps form
  /// of the same envelope, reported separately
  double gk_envelope = 0.0;
  std::optional<double> measured;
};

struct RateReport {
  Gl3BoundParams params;
  std::int64_t oracle = 0;
  double constant = 1.0;
  std::vector<RateRow> rows;
};

struct RateFamilyInput {
  const Family* family = nullptr;
  TestFunctionH h = TestFunctionH::gaussian();
  int workers = 1;
};

/// params.t is ignored; every T of t_grid is reported. The family, when
/// given, must be N = 3 with data at the prime params.p.
inline RateReport rate_report(const Gl3BoundParams& params, const std::vector<double>& t_grid,
                              double constant = 1.0, const RateFamilyInput& input = {}) {
  detail::require(constant > 0.0, "rate_report: the envelope constant must be positive");
  RateReport report;
  report.params = params;
  report.constant = constant;
  const TensorSpec spec = params.spec();
  report.oracle = trivial_multiplicity(spec);
  if (input.family) detail::require(input.family->n == 3, "rate_report: family must have N = 3");
  const auto prime = static_cast<std::uint64_t>(std::llround(params.p));
  if (input.family) {
    detail::require(static_cast<double>(prime) == params.p, "rate_report: p must be an integer prime with a family");
  }

  for (double t : t_grid) {
    Gl3BoundParams at = params;
    at.t = t;
    at.validate();
    RateRow row;
    row.t = t;
    row.envelope = constant * convergence_error(at);
    row.gk_envelope = constant * orthogonality_error(t, p_total(at), at.theta, at.eps) / std::pow(t, 5.0);
    if (input.family) {
      const auto stat = l_statistic_monomial(*input.family, prime, spec, input.h, t, input.workers);
      row.measured = std::abs(stat.value - static_cast<double>(report.oracle));
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace satotate
