#pragma once

// Satake parameters as canonical representatives of T/W, torus membership
// tests, the Casselman-Shalika coefficient map and the varrho embedding.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "satotate/character_algebra.hpp"
#include "satotate/error.hpp"
#include "satotate/weight_lattice.hpp"

namespace satotate {

inline constexpr double kProductTolerance = 1e-6;
inline constexpr double kIdentityTolerance = 1e-10;

namespace detail {

inline double principal_arg(Complex z) {
  double a = std::arg(z);
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  if (a >= 2.0 * std::numbers::pi) a = 0.0;
  return a;
}

inline bool canonical_less(Complex a, Complex b) {
  return std::make_tuple(principal_arg(a), std::abs(a), a.real(), a.imag()) <
         std::make_tuple(principal_arg(b), std::abs(b), b.real(), b.imag());
}

inline Complex ordered_product(std::span<const Complex> xs) {
  Complex p{1.0, 0.0};
  for (const Complex& x : xs) p *= x;
  return p;
}

}  // namespace detail

/// A point of T/W: N non-zero complex numbers with product 1, sorted by
/// (argument in [0, 2pi), modulus).
class SatakeParameter {
 public:
  int n() const noexcept { return static_cast<int>(alphas_.size()); }
  std::span<const Complex> alphas() const noexcept { return alphas_; }
  Complex operator[](std::size_t i) const { return alphas_[i]; }
  std::optional<double> p_hint() const noexcept { return p_hint_; }

  SatakeParameter with_p_hint(double p) const {
    SatakeParameter s = *this;
    s.p_hint_ = p;
    return s;
  }

  bool operator==(const SatakeParameter& o) const { return alphas_ == o.alphas_; }

 private:
  friend SatakeParameter canonicalize(std::span<const Complex> raw);
  std::vector<Complex> alphas_;
  std::optional<double> p_hint_;
};

/// Canonical Weyl-coset representative of raw. The product is rescaled to
/// 1 by the N-th root correction with the smallest rotation.
inline SatakeParameter canonicalize(std::span<const Complex> raw) {
  detail::require_rank(static_cast<int>(raw.size()));
  detail::require_nonzero(raw);
  std::vector<Complex> a(raw.begin(), raw.end());
  // sort first so the product is formed in a permutation-independent order
  std::sort(a.begin(), a.end(), detail::canonical_less);
  const Complex prod = detail::ordered_product(a);
  if (!(std::abs(prod - 1.0) <= kProductTolerance)) {
    throw Error(ErrorKind::invalid_argument,
                "Satake parameter product is " + std::to_string(prod.real()) + "+" +
                    std::to_string(prod.imag()) + "i, expected 1");
  }
  // already-canonical input is left untouched, which makes this idempotent
  if (std::abs(prod - 1.0) > 1e-14) {
    const double n = static_cast<double>(a.size());
    const Complex fix = std::polar(std::pow(std::abs(prod), -1.0 / n), -std::arg(prod) / n);
    for (Complex& x : a) x *= fix;
    std::sort(a.begin(), a.end(), detail::canonical_less);
  }
  SatakeParameter s;
  s.alphas_ = std::move(a);
  return s;
}

inline SatakeParameter canonicalize(std::initializer_list<Complex> raw) {
  return canonicalize(std::span<const Complex>(raw.begin(), raw.size()));
}

/// True iff every |alpha_i| lies in [1 - tol, 1 + tol].
inline bool in_T0(const SatakeParameter& x, double tol) {
  return std::all_of(x.alphas().begin(), x.alphas().end(), [tol](Complex a) {
    const double r = std::abs(a);
    return r >= 1.0 - tol && r <= 1.0 + tol;
  });
}

/// Exponent e with |alpha_i| <= p^e on T_1: 1/2, or 1/2 - 1/(N^2 + 1) refined.
inline double t1_exponent(int n, bool refined) {
  return refined ? 0.5 - 1.0 / (static_cast<double>(n) * n + 1.0) : 0.5;
}

inline bool in_T1(const SatakeParameter& x, double p, bool refined = false) {
  detail::require(p > 1.0, "in_T1: p must exceed 1");
  const double bound = std::pow(p, t1_exponent(x.n(), refined));
  return std::all_of(x.alphas().begin(), x.alphas().end(),
                     [bound](Complex a) { return std::abs(a) <= bound; });
}

/// A(p^{l_1}, ..., p^{l_{N-1}}) = chi_{aleph(l)}(X(p)).
inline Complex coefficient(const SatakeParameter& x, const CoefficientIndex& idx) {
  detail::require(idx.n() == x.n(), "coefficient: index rank does not match parameter");
  return eval_char(aleph(idx), x.alphas());
}

/// Index of A[k] = A(1, ..., p, ..., 1) with p in position N - k, so that
/// A[k] is the k-th fundamental character.
inline CoefficientIndex fundamental_index(int n, int k) {
  detail::require(k >= 1 && k <= n - 1, "fundamental_index: k out of range");
  return CoefficientIndex::unit(n, n - k);
}

/// (chi_1(x), ..., chi_{N-1}(x)).
inline std::vector<Complex> varrho(const SatakeParameter& x) {
  const auto e = elementary_symmetric(x.alphas());
  return std::vector<Complex>(e.begin() + 1, e.end() - 1);
}

/// |A(1,p) A(p,1) - A(p,p) - 1|: V_1 (x) V_2 = adjoint (+) trivial for SL(3).
inline double hecke_check_n3(const SatakeParameter& x) {
  detail::require(x.n() == 3, "hecke_check_n3 requires N = 3");
  const Complex a01 = coefficient(x, CoefficientIndex(3, {0, 1}));
  const Complex a10 = coefficient(x, CoefficientIndex(3, {1, 0}));
  const Complex a11 = coefficient(x, CoefficientIndex(3, {1, 1}));
  return std::abs(a01 * a10 - a11 - 1.0);
}

}  // namespace satotate
