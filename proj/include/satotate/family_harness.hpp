#pragma once

// Weighted spectral-family statistics. A family is a finite list of
// (spectral parameter, L(1, Ad) value, p-power coefficients and/or Satake
// parameters) records standing in for a Hecke-Maass spectrum; the weighted
// average L_T(f) = sum_j f(X_j(p)) w_j(T) / sum_j w_j(T) with
// w_j(T) = h_T(nu_j) / L(1, phi_j, Ad) is what should approach the
// Sato-Tate integral of f.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "satotate/character_algebra.hpp"
#include "satotate/error.hpp"
#include "satotate/gl3_error_bound.hpp"
#include "satotate/sato_tate_sampler.hpp"
#include "satotate/satake.hpp"
#include "satotate/weight_lattice.hpp"

namespace satotate {

inline constexpr double kCoherenceTolerance = 1e-6;

struct FamilyMember {
  SpectralParameter nu;
  /// L(1, phi, Ad); data, never computed here.
  double l1_adjoint = 1.0;
  /// A(p^{l_1}, ..., p^{l_{N-1}}) keyed by l. Empty when absent.
  std::map<CoefficientIndex, Complex> coefficients;
  /// Satake parameter per prime. Empty when absent.
  std::map<std::uint64_t, SatakeParameter> satake;
};

struct Family {
  int n = 3;
  std::string label;
  /// Prime the coefficient tables refer to. Unset means the tables are
  /// unqualified: checked against every stored Satake parameter and usable at
  /// any requested prime.
  std::optional<std::uint64_t> coefficient_prime;
  std::vector<FamilyMember> members;
};

/// Non-negative bounded test function h_T on spectral parameters.
class TestFunctionH {
 public:
  enum class Kind { gaussian, indicator, custom_table };

  /// exp(-Re lambda(nu) / T^2)
  static TestFunctionH gaussian() { return TestFunctionH(Kind::gaussian, {}); }
  /// 1 if Re lambda(nu) <= T^2, else 0
  static TestFunctionH indicator() { return TestFunctionH(Kind::indicator, {}); }
  /// Piecewise-linear in u = Re lambda(nu) / T^2 through the given (u, h)
  /// knots, held constant outside them.
  static TestFunctionH custom_table(std::vector<std::pair<double, double>> knots) {
    detail::require(!knots.empty(), "custom h table needs at least one knot");
    std::sort(knots.begin(), knots.end());
    for (const auto& [u, h] : knots) {
      detail::require(std::isfinite(u) && std::isfinite(h) && h >= 0.0,
                      "custom h table values must be finite and non-negative");
    }
    return TestFunctionH(Kind::custom_table, std::move(knots));
  }

  Kind kind() const noexcept { return kind_; }
  const std::vector<std::pair<double, double>>& knots() const noexcept { return knots_; }

  double operator()(const SpectralParameter& nu, double t) const {
    detail::require(t >= 1.0, "h_T needs T >= 1");
    const double lambda = laplace_eigenvalue(nu).real();
    switch (kind_) {
      case Kind::gaussian:
        return std::exp(-lambda / (t * t));
      case Kind::indicator:
        return lambda <= t * t ? 1.0 : 0.0;
      case Kind::custom_table: {
        const double u = lambda / (t * t);
        if (u <= knots_.front().first) return knots_.front().second;
        if (u >= knots_.back().first) return knots_.back().second;
        auto hi = std::upper_bound(knots_.begin(), knots_.end(), u,
                                   [](double v, const auto& k) { return v < k.first; });
        auto lo = std::prev(hi);
        const double s = (u - lo->first) / (hi->first - lo->first);
        return lo->second + s * (hi->second - lo->second);
      }
    }
    return 0.0;
  }

 private:
  TestFunctionH(Kind kind, std::vector<std::pair<double, double>> knots)
      : kind_(kind), knots_(std::move(knots)) {}

  Kind kind_;
  std::vector<std::pair<double, double>> knots_;
};

inline double h_eval(const TestFunctionH& h, const SpectralParameter& nu, double t) {
  return h(nu, t);
}

/// w_j(T) = h_T(nu_j) / L(1, phi_j, Ad).
inline double weight(const FamilyMember& member, const TestFunctionH& h, double t) {
  return h(member.nu, t) / member.l1_adjoint;
}

namespace detail {

inline double coherence_residual(const FamilyMember& m, const SatakeParameter& x) {
  double worst = 0.0;
  for (const auto& [idx, a] : m.coefficients) {
    const Complex predicted = coefficient(x, idx);
    const double r = std::abs(a - predicted) / std::max(1.0, std::abs(predicted));
    worst = std::max(worst, r);
  }
  return worst;
}

inline bool coefficients_apply_to(const Family& f, std::uint64_t p) {
  return !f.coefficient_prime || *f.coefficient_prime == p;
}

}  // namespace detail

struct ValidationSummary {
  std::size_t members = 0;
  std::size_t coherence_checks = 0;
  double max_residual = 0.0;
};

/// Checks every family invariant; throws FamilyError naming the first bad
/// member (and the residual, for Casselman-Shalika failures).
inline ValidationSummary validate(const Family& family) {
  detail::require_rank(family.n);
  ValidationSummary summary;
  summary.members = family.members.size();
  const auto zero = CoefficientIndex::zero(family.n);
  for (std::size_t j = 0; j < family.members.size(); ++j) {
    const FamilyMember& m = family.members[j];
    const std::string where = "member " + std::to_string(j) + ": ";
    if (m.nu.n() != family.n) throw FamilyError(where + "spectral parameter rank differs from family N", j);
    if (!(m.l1_adjoint > 0.0) || !std::isfinite(m.l1_adjoint)) {
      throw FamilyError(where + "L1Ad must be a positive finite number", j);
    }
    for (const auto& [idx, a] : m.coefficients) {
      if (idx.n() != family.n) throw FamilyError(where + "coefficient index rank differs from family N", j);
    }
    if (auto it = m.coefficients.find(zero); it != m.coefficients.end()) {
      const double r = std::abs(it->second - 1.0);
      if (r > 1e-9) throw FamilyError(where + "coefficient A(1,...,1) must equal 1", j, r);
    }
    for (const auto& [p, x] : m.satake) {
      if (x.n() != family.n) throw FamilyError(where + "Satake parameter rank differs from family N", j);
      if (m.coefficients.empty() || !detail::coefficients_apply_to(family, p)) continue;
      const double r = detail::coherence_residual(m, x);
      ++summary.coherence_checks;
      summary.max_residual = std::max(summary.max_residual, r);
      if (r > kCoherenceTolerance) {
        throw FamilyError(where + "coefficients disagree with the Satake parameter at p=" +
                              std::to_string(p) + " (Casselman-Shalika residual " +
                              std::to_string(r) + ")",
                          j, r);
      }
    }
  }
  return summary;
}

/// Weighted average with a plug-in standard error
/// sqrt(sum w_j^2 |f_j - L|^2) / sum w_j (times sqrt(m/(m-1))), meaningful
/// when members are drawn independently.
struct LStatistic {
  Complex value{};
  double std_error = 0.0;
  double weight_sum = 0.0;
  std::size_t members = 0;
};

namespace detail {

template <class Eval>
LStatistic weighted_average(const Family& family, const TestFunctionH& h, double t, Eval&& eval,
                            int workers) {
  const std::size_t m = family.members.size();
  std::vector<double> w(m);
  std::vector<Complex> v(m);
  const std::int64_t chunk = 1024;
  const std::int64_t chunks = (static_cast<std::int64_t>(m) + chunk - 1) / chunk;
  for_each_chunk(chunks, workers, [&](std::int64_t c) {
    const std::size_t begin = static_cast<std::size_t>(c * chunk);
    const std::size_t end = std::min(m, begin + static_cast<std::size_t>(chunk));
    for (std::size_t j = begin; j < end; ++j) {
      w[j] = weight(family.members[j], h, t);
      v[j] = w[j] > 0.0 ? eval(j) : Complex{};
    }
  });

  LStatistic out;
  Complex num{};
  for (std::size_t j = 0; j < m; ++j) {
    num += w[j] * v[j];
    out.weight_sum += w[j];
    if (w[j] > 0.0) ++out.members;
  }
  if (!(out.weight_sum > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "family has zero total weight at T=" + std::to_string(t));
  }
  out.value = num / out.weight_sum;
  double var = 0.0;
  for (std::size_t j = 0; j < m; ++j) var += w[j] * w[j] * std::norm(v[j] - out.value);
  if (out.members > 1) {
    const double k = static_cast<double>(out.members);
    out.std_error = std::sqrt(var * k / (k - 1.0)) / out.weight_sum;
  }
  return out;
}

inline const SatakeParameter& satake_at(const Family& family, std::size_t j, std::uint64_t p) {
  const auto& s = family.members[j].satake;
  auto it = s.find(p);
  if (it == s.end()) {
    throw FamilyError("member " + std::to_string(j) + " has no Satake parameter at p=" + std::to_string(p), j);
  }
  return it->second;
}

}  // namespace detail

/// L_T(f) over the members' Satake parameters at p, with its standard error.
inline LStatistic l_statistic(const Family& family, std::uint64_t p,
                              const std::function<Complex(const SatakeParameter&)>& f,
                              const TestFunctionH& h, double t, int workers = 1) {
  return detail::weighted_average(
      family, h, t, [&](std::size_t j) { return f(detail::satake_at(family, j, p)); }, workers);
}

inline Complex l_functional(const Family& family, std::uint64_t p,
                            const std::function<Complex(const SatakeParameter&)>& f,
                            const TestFunctionH& h, double t, int workers = 1) {
  return l_statistic(family, p, f, h, t, workers).value;
}

/// L_T of the monomial prod_k A[k]^{i_k} conj(A[k])^{i'_k}. Uses the stored
/// Satake parameter when there is one, otherwise the stored coefficients
/// A[k] = A(1, ..., p, ..., 1) directly.
inline LStatistic l_statistic_monomial(const Family& family, std::uint64_t p, const TensorSpec& spec,
                                       const TestFunctionH& h, double t, int workers = 1) {
  detail::require(spec.n() == family.n, "monomial rank differs from family N");
  const int n = family.n;
  std::vector<CoefficientIndex> fundamentals;
  for (int k = 1; k < n; ++k) fundamentals.push_back(fundamental_index(n, k));

  auto eval = [&](std::size_t j) -> Complex {
    const FamilyMember& m = family.members[j];
    if (auto it = m.satake.find(p); it != m.satake.end()) return character_monomial(spec, it->second);
    if (!detail::coefficients_apply_to(family, p)) {
      throw FamilyError("member " + std::to_string(j) + " has no data at p=" + std::to_string(p), j);
    }
    Complex v{1.0, 0.0};
    for (int k = 1; k < n; ++k) {
      if (spec.power(k) == 0 && spec.conj_power(k) == 0) continue;
      auto c = m.coefficients.find(fundamentals[static_cast<std::size_t>(k - 1)]);
      if (c == m.coefficients.end()) {
        throw FamilyError("member " + std::to_string(j) + " lacks A[" + std::to_string(k) +
                              "] at p=" + std::to_string(p),
                          j);
      }
      for (int r = 0; r < spec.power(k); ++r) v *= c->second;
      for (int r = 0; r < spec.conj_power(k); ++r) v *= std::conj(c->second);
    }
    return v;
  };
  return detail::weighted_average(family, h, t, eval, workers);
}

inline Complex l_functional_monomial(const Family& family, std::uint64_t p, const TensorSpec& spec,
                                     const TestFunctionH& h, double t, int workers = 1) {
  return l_statistic_monomial(family, p, spec, h, t, workers).value;
}

enum class SynthMode { sato_tate, t1_perturbed };

inline constexpr int kSpectralGridSize = 40;
inline constexpr double kSpectralGridStep = 0.5;

/// Synthetic stand-in spectrum. Member j draws everything from stream j of
/// the seed, so the family does not depend on the worker count:
///  - nu_i = i t_i with t_i uniform on the grid {0.5, 1.0, ..., 20.0},
///  - L(1, Ad) log-uniform on [0.1, 10],
///  - one Satake parameter per listed prime, from sample_st (sato-tate) or
///    sample_t1 (t1-perturbed).
inline Family synth_family(int n, std::size_t m, SynthMode mode, const std::vector<std::uint64_t>& primes,
                           std::uint64_t seed, int workers = 1) {
  detail::require_rank(n);
  detail::require(m >= 1, "synthetic family needs at least one member");
  detail::require(!primes.empty(), "synthetic family needs at least one prime");
  for (std::uint64_t p : primes) detail::require(p >= 2, "primes must be >= 2");

  Family family;
  family.n = n;
  family.label = std::string(mode == SynthMode::sato_tate ? "synthetic sato-tate" : "synthetic t1-perturbed") +
                 " N=" + std::to_string(n) + " m=" + std::to_string(m) + " seed=" + std::to_string(seed);
  family.members.resize(m, FamilyMember{SpectralParameter::zero(n), 1.0, {}, {}});

  const std::uint64_t mode_salt = mode == SynthMode::sato_tate ? 0x51ull : 0x71ull;
  const std::int64_t chunk = 512;
  const std::int64_t chunks = (static_cast<std::int64_t>(m) + chunk - 1) / chunk;
  detail::for_each_chunk(chunks, workers, [&](std::int64_t c) {
    const std::size_t begin = static_cast<std::size_t>(c * chunk);
    const std::size_t end = std::min(m, begin + static_cast<std::size_t>(chunk));
    for (std::size_t j = begin; j < end; ++j) {
      Engine rng = make_engine({seed ^ (mode_salt << 56), j});
      std::uniform_int_distribution<int> grid(1, kSpectralGridSize);
      std::uniform_real_distribution<double> log_l1(std::log(0.1), std::log(10.0));
      std::vector<Complex> nu(static_cast<std::size_t>(n - 1));
      for (Complex& v : nu) v = Complex(0.0, kSpectralGridStep * grid(rng));
      FamilyMember& member = family.members[j];
      member.nu = SpectralParameter(n, std::move(nu));
      member.l1_adjoint = std::exp(log_l1(rng));
      for (std::uint64_t p : primes) {
        const double pd = static_cast<double>(p);
        SatakeParameter x = mode == SynthMode::sato_tate ? sample_st(n, rng) : sample_t1(n, pd, rng);
        member.satake.insert_or_assign(p, x.with_p_hint(pd));
      }
    }
  });
  return family;
}

/// Fills each member's coefficient table at p from its Satake parameter for
/// every index with l-entries summing to at most max_total.
inline void attach_coefficients(Family& family, std::uint64_t p, int max_total) {
  std::vector<CoefficientIndex> indices;
  std::vector<int> l(static_cast<std::size_t>(family.n - 1), 0);
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos == l.size()) {
      indices.emplace_back(family.n, l);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      l[pos] = v;
      self(self, pos + 1, left - v);
    }
    l[pos] = 0;
  };
  rec(rec, 0, max_total);
  for (std::size_t j = 0; j < family.members.size(); ++j) {
    const SatakeParameter& x = detail::satake_at(family, j, p);
    for (const auto& idx : indices) family.members[j].coefficients.insert_or_assign(idx, coefficient(x, idx));
  }
  family.coefficient_prime = p;
}

struct EquidistRow {
  TensorSpec spec;
  double t = 0.0;
  LStatistic statistic;
  std::int64_t oracle = 0;
  /// L_T(monomial) - a_0
  Complex difference{};
  /// N = 3 only: convergence_error at this T, p and exponents
  std::optional<double> error_term;
};

struct EquidistOptions {
  double theta = kDefaultTheta;
  double eps = 1e-3;
  int workers = 1;
  TermBudget budget{};
};

/// For each spec and each T: L_T(monomial), the oracle a_0, their
/// difference and (N = 3) the predicted error envelope.
inline std::vector<EquidistRow> equidist_report(const Family& family, std::uint64_t p,
                                                const std::vector<TensorSpec>& specs,
                                                const TestFunctionH& h, const std::vector<double>& t_grid,
                                                const EquidistOptions& opts = {}) {
  std::vector<EquidistRow> rows;
  for (const TensorSpec& spec : specs) {
    const std::int64_t oracle = trivial_multiplicity(spec, opts.budget);
    for (double t : t_grid) {
      EquidistRow row{spec, t, l_statistic_monomial(family, p, spec, h, t, opts.workers), oracle, {}, {}};
      row.difference = row.statistic.value - static_cast<double>(oracle);
      if (family.n == 3) {
        Gl3BoundParams params;
        params.t = t;
        params.p = static_cast<double>(p);
        std::copy(spec.exponents().begin(), spec.exponents().end(), params.exponents.begin());
        params.theta = opts.theta;
        params.eps = opts.eps;
        row.error_term = convergence_error(params);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace satotate
