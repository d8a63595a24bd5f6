#pragma once

// Explicit N = 3 quantities: the error envelope of the GL(3) orthogonality
// relation, the induced rate of convergence for character monomials, and an
// exact check of the multiplicity-sum inequality behind it.
//
// Implied O-constants are taken as 1. The envelopes are shapes, not
// certified bounds; only verify_multiplicity_bound asserts anything.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "satotate/character_algebra.hpp"
#include "satotate/error.hpp"

namespace satotate {

inline constexpr double kDefaultTheta = 7.0 / 64.0;

struct Gl3BoundParams {
  double t = 1.0;
  double p = 2.0;
  /// (i_1, i'_1, i_2, i'_2)
  std::array<int, 4> exponents{};
  double theta = kDefaultTheta;
  double eps = 1e-3;

  void validate() const {
    detail::require(t >= 1.0, "T must be >= 1");
    detail::require(p > 1.0, "p must exceed 1");
    detail::require(eps > 0.0, "eps must be positive");
    detail::require(theta >= 0.0 && theta <= kDefaultTheta, "theta must lie in [0, 7/64]");
    for (int e : exponents) detail::require(e >= 0, "exponents must be >= 0");
  }

  int degree() const { return exponents[0] + exponents[1] + exponents[2] + exponents[3]; }

  TensorSpec spec() const {
    return TensorSpec(3, std::vector<int>(exponents.begin(), exponents.end()));
  }
};

/// P = p^{i_1 + i'_1 + i_2 + i'_2}.
inline double p_total(const Gl3BoundParams& params) {
  return std::pow(params.p, params.degree());
}

/// (T^2 P^{1/2} + T^3 P^theta + P^{5/3}) (T P)^eps.
inline double orthogonality_error(double t, double p_big, double theta, double eps) {
  return (t * t * std::sqrt(p_big) + t * t * t * std::pow(p_big, theta) +
          std::pow(p_big, 5.0 / 3.0)) *
         std::pow(t * p_big, eps);
}

/// (T^2 P^{1/2} + T^3 P^theta + P^{5/3}) T^{-5+eps} P^eps.
inline double convergence_error(const Gl3BoundParams& params) {
  const double t = params.t;
  const double pb = p_total(params);
  return (t * t * std::sqrt(pb) + t * t * t * std::pow(pb, params.theta) +
          std::pow(pb, 5.0 / 3.0)) *
         std::pow(t, -5.0 + params.eps) * std::pow(pb, params.eps);
}

/// Integer Laurent polynomial in x, exponent -> coefficient.
using Laurent = std::map<int, std::int64_t>;

namespace detail {

// Specializing every fundamental-weight exponential to x sends e^eta to
// x^{eta_1 - eta_N}, the sum of its Dynkin labels.
inline int dynkin_sum(const WeightVector& w) { return w[0] - w[static_cast<std::size_t>(w.n() - 1)]; }

}  // namespace detail

/// (x + 1 + x^{-1})^d expanded with exact coefficients.
inline Laurent trinomial_power(int d) {
  Laurent acc{{0, 1}};
  for (int r = 0; r < d; ++r) {
    Laurent next;
    for (const auto& [e, c] : acc) {
      for (int s = -1; s <= 1; ++s) next[e + s] += c;
    }
    acc = std::move(next);
  }
  return acc;
}

struct MultiplicityBoundRow {
  std::array<int, 4> exponents{};
  double p = 0.0;
  double alpha = 0.0;
  /// dominant_part_sum: sum over dominant weights of the product-table coefficient times p^{alpha(l_1+l_2)}
  double exact = 0.0;
  /// (p^alpha + 1 + p^-alpha)^{degree}
  double bound = 0.0;
  /// full specialization equals the trinomial power coefficient-for-coefficient
  bool identity_holds = false;
  /// bound - exact is a non-zero Laurent polynomial with non-negative coefficients
  bool strict_exact = false;
  bool pass = false;
};

/// Checks sum_{l} a_{aleph(l)} p^{alpha(l_1+l_2)} <= (p^alpha + 1 + p^-alpha)^{degree}
/// for every N = 3 exponent tuple of degree <= max_degree.
///
/// Both sides are first compared as integer Laurent polynomials in
/// x = p^alpha: the specialization of the whole product table must equal the
/// trinomial power exactly, and dropping the non-dominant weights must remove
/// a non-zero polynomial with non-negative coefficients, which proves the
/// strict inequality for every x > 0. The floating values are reported and
/// compared as well. Any failure throws.
inline std::vector<MultiplicityBoundRow> verify_multiplicity_bound(double p, double alpha,
                                                                   int max_degree,
                                                                   TermBudget budget = {}) {
  detail::require(p > 1.0, "verify_multiplicity_bound: p must exceed 1");
  detail::require(max_degree >= 0, "verify_multiplicity_bound: max_degree must be >= 0");
  std::vector<MultiplicityBoundRow> rows;
  for (const TensorSpec& spec : TensorSpec::enumerate(3, max_degree)) {
    const auto table = tensor_product_table(spec, budget);
    Laurent full, dominant;
    for (const auto& [w, c] : table.terms()) {
      full[detail::dynkin_sum(w)] += c;
      if (is_dominant(w)) dominant[detail::dynkin_sum(w)] += c;
    }
    std::erase_if(full, [](const auto& kv) { return kv.second == 0; });

    MultiplicityBoundRow row;
    std::copy(spec.exponents().begin(), spec.exponents().end(), row.exponents.begin());
    row.p = p;
    row.alpha = alpha;
    row.identity_holds = full == trinomial_power(spec.degree());

    bool nonneg = true, nonzero = false;
    for (const auto& [e, c] : full) {
      auto it = dominant.find(e);
      const std::int64_t gap = c - (it == dominant.end() ? 0 : it->second);
      if (gap < 0) nonneg = false;
      if (gap > 0) nonzero = true;
    }
    row.strict_exact = nonneg && nonzero;

    row.exact = dominant_part_sum(spec, p, alpha, budget);
    row.bound = specialization_bound_n3(spec, p, alpha);
    if (spec.degree() == 0) {
      row.pass = row.identity_holds && nonneg && row.exact == row.bound;
    } else {
      row.pass = row.identity_holds && row.strict_exact && row.exact < row.bound;
    }
    rows.push_back(row);
    if (!row.pass) {
      throw Error(ErrorKind::bound_violation,
                  "multiplicity bound fails for exponents (" + spec.str() + "), p=" +
                      std::to_string(p) + ", alpha=" + std::to_string(alpha));
    }
  }
  return rows;
}

}  // namespace satotate
