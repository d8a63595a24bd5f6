#pragma once

// Type A_{N-1} weight combinatorics in integer partition coordinates, the
// coefficient-index <-> dominant-weight bijection, and the spectral
// parameter formulas (b_ij, B_j, Langlands parameter, Laplace eigenvalue).
//
// A weight sum_i a_i e_i of SL(N) is only defined modulo the all-ones vector.
// We store it as an integer N-vector shifted so that its minimum is 0; for a
// dominant weight that is a partition with last part 0.

#include <algorithm>
#include <compare>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "satotate/error.hpp"

namespace satotate {

using Complex = std::complex<double>;

namespace detail {

inline std::size_t hash_ints(std::span<const int> xs) {
  // FNV-1a over the raw values
  std::size_t h = 1469598103934665603ull;
  for (int x : xs) {
    h ^= static_cast<std::size_t>(static_cast<unsigned>(x));
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string join_ints(std::span<const int> xs, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(xs[i]);
  }
  return out;
}

inline void require_rank(int n) { require(n >= 2, "rank N must be >= 2, got " + std::to_string(n)); }

}  // namespace detail

/// Highest weight of an irreducible SL(N)/SU(N) representation as a
/// partition (parts[0] >= ... >= parts[N-1] = 0).
class DominantWeight {
 public:
  explicit DominantWeight(std::vector<int> parts) : parts_(std::move(parts)) {
    detail::require_rank(static_cast<int>(parts_.size()));
    detail::require(parts_.back() == 0, "dominant weight must have last part 0: (" +
                                            detail::join_ints(parts_) + ")");
    for (std::size_t i = 0; i + 1 < parts_.size(); ++i) {
      detail::require(parts_[i] >= parts_[i + 1],
                      "dominant weight parts must be non-increasing: (" +
                          detail::join_ints(parts_) + ")");
    }
  }

  static DominantWeight zero(int n) {
    detail::require_rank(n);
    return DominantWeight(std::vector<int>(static_cast<std::size_t>(n), 0));
  }

  /// Highest weight of the k-th fundamental representation, the k-th
  /// exterior power of the defining one: (1^k, 0^{N-k}).
  static DominantWeight fundamental(int n, int k) {
    detail::require_rank(n);
    detail::require(k >= 0 && k < n, "fundamental index must lie in [0, N)");
    std::vector<int> p(static_cast<std::size_t>(n), 0);
    std::fill_n(p.begin(), k, 1);
    return DominantWeight(std::move(p));
  }

  int n() const noexcept { return static_cast<int>(parts_.size()); }
  std::span<const int> parts() const noexcept { return parts_; }
  int operator[](std::size_t i) const { return parts_[i]; }
  int size() const noexcept {
    int s = 0;
    for (int x : parts_) s += x;
    return s;
  }
  bool is_zero() const noexcept { return parts_.front() == 0; }

  std::string str() const { return "(" + detail::join_ints(parts_) + ")"; }

  auto operator<=>(const DominantWeight&) const = default;

 private:
  std::vector<int> parts_;
};

/// A general element of the weight lattice, canonical modulo the all-ones
/// vector (minimum entry 0).
class WeightVector {
 public:
  explicit WeightVector(std::vector<int> coords) : coords_(std::move(coords)) {
    detail::require_rank(static_cast<int>(coords_.size()));
    const int m = *std::min_element(coords_.begin(), coords_.end());
    for (int& c : coords_) c -= m;
  }

  explicit WeightVector(const DominantWeight& w)
      : coords_(w.parts().begin(), w.parts().end()) {}

  int n() const noexcept { return static_cast<int>(coords_.size()); }
  std::span<const int> coords() const noexcept { return coords_; }
  int operator[](std::size_t i) const { return coords_[i]; }

  bool is_zero() const noexcept {
    return std::all_of(coords_.begin(), coords_.end(), [](int c) { return c == 0; });
  }

  /// The dominant representative of this weight's Weyl orbit.
  DominantWeight dominant() const {
    std::vector<int> s = coords_;
    std::sort(s.begin(), s.end(), std::greater<>());
    const int m = s.back();
    for (int& x : s) x -= m;
    return DominantWeight(std::move(s));
  }

  friend WeightVector operator+(const WeightVector& a, const WeightVector& b) {
    detail::require(a.n() == b.n(), "weight rank mismatch");
    std::vector<int> c(a.coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords_[i] + b.coords_[i];
    return WeightVector(std::move(c));
  }

  std::string str() const { return "(" + detail::join_ints(coords_) + ")"; }

  auto operator<=>(const WeightVector&) const = default;

 private:
  std::vector<int> coords_;
};

/// Exponent vector (l_1, ..., l_{N-1}) of a p-power Fourier coefficient
/// A(p^{l_1}, ..., p^{l_{N-1}}).
class CoefficientIndex {
 public:
  CoefficientIndex(int n, std::vector<int> l) : n_(n), l_(std::move(l)) {
    detail::require_rank(n);
    detail::require(l_.size() == static_cast<std::size_t>(n - 1),
                    "coefficient index for N=" + std::to_string(n) + " needs " +
                        std::to_string(n - 1) + " entries");
    for (int x : l_) detail::require(x >= 0, "coefficient index entries must be >= 0");
  }

  static CoefficientIndex zero(int n) {
    return CoefficientIndex(n, std::vector<int>(static_cast<std::size_t>(n - 1), 0));
  }

  /// Index with a single 1 in 1-based position pos.
  static CoefficientIndex unit(int n, int pos) {
    detail::require(pos >= 1 && pos <= n - 1, "unit index position out of range");
    std::vector<int> l(static_cast<std::size_t>(n - 1), 0);
    l[static_cast<std::size_t>(pos - 1)] = 1;
    return CoefficientIndex(n, std::move(l));
  }

  int n() const noexcept { return n_; }
  std::span<const int> l() const noexcept { return l_; }
  int operator[](std::size_t i) const { return l_[i]; }
  int total() const noexcept {
    int s = 0;
    for (int x : l_) s += x;
    return s;
  }
  bool is_zero() const noexcept { return total() == 0; }

  std::string str() const { return detail::join_ints(l_); }

  auto operator<=>(const CoefficientIndex&) const = default;

 private:
  int n_;
  std::vector<int> l_;
};

/// Spectral parameter nu in C^{N-1} of a Maass form.
class SpectralParameter {
 public:
  SpectralParameter(int n, std::vector<Complex> nu) : n_(n), nu_(std::move(nu)) {
    detail::require_rank(n);
    detail::require(nu_.size() == static_cast<std::size_t>(n - 1),
                    "spectral parameter for N=" + std::to_string(n) + " needs " +
                        std::to_string(n - 1) + " entries");
  }

  static SpectralParameter zero(int n) {
    return SpectralParameter(n, std::vector<Complex>(static_cast<std::size_t>(n - 1)));
  }

  int n() const noexcept { return n_; }
  std::span<const Complex> nu() const noexcept { return nu_; }

  bool operator==(const SpectralParameter&) const = default;

 private:
  int n_;
  std::vector<Complex> nu_;
};

/// l -> sum_i (l_1 + ... + l_{N-i}) (e_i - (1/N) sum_j e_j), written as the
/// partition with parts[i-1] = l_1 + ... + l_{N-i}.
inline DominantWeight aleph(const CoefficientIndex& idx) {
  const int n = idx.n();
  std::vector<int> parts(static_cast<std::size_t>(n), 0);
  int tail = 0;
  // parts[i-1] needs the prefix sum of l up to N-i, so fill from the bottom.
  for (int i = n - 1; i >= 1; --i) {
    tail += idx[static_cast<std::size_t>(n - i - 1)];
    parts[static_cast<std::size_t>(i - 1)] = tail;
  }
  return DominantWeight(std::move(parts));
}

inline CoefficientIndex aleph_inv(const DominantWeight& mu) {
  const int n = mu.n();
  std::vector<int> l(static_cast<std::size_t>(n - 1));
  for (int k = 1; k <= n - 1; ++k) {
    l[static_cast<std::size_t>(k - 1)] =
        mu[static_cast<std::size_t>(n - k - 1)] - mu[static_cast<std::size_t>(n - k)];
  }
  return CoefficientIndex(n, std::move(l));
}

inline bool is_dominant(const WeightVector& w) {
  const auto c = w.coords();
  return std::is_sorted(c.begin(), c.end(), std::greater<>());
}

/// b_ij = ij if i + j <= N, (N - i)(N - j) otherwise; 1 <= i, j <= N - 1.
inline int b_entry(int i, int j, int n) {
  detail::require_rank(n);
  detail::require(i >= 1 && i <= n - 1 && j >= 1 && j <= n - 1,
                  "b_entry indices must lie in [1, N-1]");
  return i + j <= n ? i * j : (n - i) * (n - j);
}

/// B_j(nu) = sum_i b_ij nu_i for j = 1..N-1 (returned 0-based).
inline std::vector<Complex> b_sums(const SpectralParameter& nu) {
  const int n = nu.n();
  std::vector<Complex> out(static_cast<std::size_t>(n - 1));
  for (int j = 1; j <= n - 1; ++j) {
    Complex acc{};
    for (int i = 1; i <= n - 1; ++i) {
      acc += static_cast<double>(b_entry(i, j, n)) * nu.nu()[static_cast<std::size_t>(i - 1)];
    }
    out[static_cast<std::size_t>(j - 1)] = acc;
  }
  return out;
}

/// Langlands parameter l(nu) in C^N. The last entry is formed as the negated
/// running sum of the others, which equals -B_1(nu) and makes a left-to-right
/// sum of the result exactly zero in floating point.
inline std::vector<Complex> langlands(const SpectralParameter& nu) {
  const int n = nu.n();
  const auto B = b_sums(nu);
  auto b = [&](int j) { return B[static_cast<std::size_t>(j - 1)]; };
  std::vector<Complex> ell(static_cast<std::size_t>(n));
  ell[0] = b(n - 1);
  Complex running = ell[0];
  for (int i = 2; i <= n - 1; ++i) {
    ell[static_cast<std::size_t>(i - 1)] = b(n - i) - b(n - i + 1);
    running += ell[static_cast<std::size_t>(i - 1)];
  }
  ell[static_cast<std::size_t>(n - 1)] = -running;
  return ell;
}

/// lambda(nu) = (N^3 - N)/24 - (1/2) sum_i l_i(nu)^2.
inline Complex laplace_eigenvalue(const SpectralParameter& nu) {
  const double n = nu.n();
  Complex sq{};
  for (const Complex& l : langlands(nu)) sq += l * l;
  return Complex((n * n * n - n) / 24.0, 0.0) - 0.5 * sq;
}

}  // namespace satotate

template <>
struct std::hash<satotate::DominantWeight> {
  std::size_t operator()(const satotate::DominantWeight& w) const noexcept {
    return satotate::detail::hash_ints(w.parts());
  }
};

template <>
struct std::hash<satotate::WeightVector> {
  std::size_t operator()(const satotate::WeightVector& w) const noexcept {
    return satotate::detail::hash_ints(w.coords());
  }
};
