#pragma once

// Sampling from the Sato-Tate measure on T_0/W (Haar measure of SU(N) pushed
// to conjugacy classes), Monte Carlo integration over it, and the GL(2)
// semicircle / p-adic Plancherel densities.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <thread>
#include <vector>

#include "satotate/error.hpp"
#include "satotate/satake.hpp"

namespace satotate {

/// Seed plus stream index; each pair seeds an independent engine.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

using Engine = std::mt19937_64;

inline Engine make_engine(RngSeed s) {
  std::seed_seq seq{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32),
                    static_cast<std::uint32_t>(s.stream),
                    static_cast<std::uint32_t>(s.stream >> 32), 0x5a7e7a7eu};
  return Engine(seq);
}

struct McEstimate {
  Complex mean{};
  double std_error = 0.0;
  std::int64_t samples = 0;

  /// (mean - target) / std_error, or 0 / inf when the error vanishes.
  double z_score(Complex target) const {
    const double d = std::abs(mean - target);
    if (std_error == 0.0) return d == 0.0 ? 0.0 : INFINITY;
    return d / std_error;
  }
};

/// Eigenvalues of a Haar-random SU(N) matrix, canonicalized.
///
/// Complex Ginibre matrix -> QR -> column phases from diag(R) gives Haar on
/// U(N). Dividing by a uniformly chosen N-th root of the determinant gives
/// Haar on SU(N); the division is applied to the eigenvalues directly.
inline SatakeParameter sample_st(int n, Engine& rng) {
  detail::require_rank(n);
  std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);
  std::uniform_int_distribution<int> root_pick(0, n - 1);
  Eigen::MatrixXcd z(n, n);
  for (;;) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        z(i, j) = Complex(re, im);
      }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd& r = qr.matrixQR();
    bool degenerate = false;
    for (int j = 0; j < n; ++j) {
      const Complex d = r(j, j);
      const double ad = std::abs(d);
      if (ad == 0.0) {
        degenerate = true;
        break;
      }
      q.col(j) *= d / ad;
    }
    if (degenerate) continue;

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(q, false);
    if (es.info() != Eigen::Success) continue;
    std::vector<Complex> ev(static_cast<std::size_t>(n));
    Complex det{1.0, 0.0};
    for (int i = 0; i < n; ++i) {
      ev[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
      det *= ev[static_cast<std::size_t>(i)];
    }
    const int k = root_pick(rng);
    const Complex root = std::polar(std::pow(std::abs(det), 1.0 / n),
                                    (std::arg(det) + 2.0 * std::numbers::pi * k) / n);
    for (Complex& x : ev) x /= root;
    return canonicalize(ev);
  }
}

/// Cross-check sampler: uniform torus angles accepted with probability
/// |Vandermonde|^2 / N^N (Weyl integration formula). Practical for N <= 4.
inline SatakeParameter sample_st_weyl_rejection(int n, Engine& rng) {
  detail::require(n >= 2 && n <= 4, "rejection sampler supports 2 <= N <= 4");
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double cap = std::pow(static_cast<double>(n), n);
  std::vector<Complex> a(static_cast<std::size_t>(n));
  for (;;) {
    double last = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
      const double t = angle(rng);
      a[static_cast<std::size_t>(i)] = std::polar(1.0, t);
      last -= t;
    }
    a.back() = std::polar(1.0, last);
    double v = 1.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) v *= std::norm(a[static_cast<std::size_t>(i)] - a[static_cast<std::size_t>(j)]);
    }
    if (unit(rng) * cap < v) return canonicalize(a);
  }
}

/// Sato-Tate sample pushed radially into T_1: log-moduli drawn uniformly,
/// centred so the product stays 1, and kept strictly inside |alpha| <= p^e
/// with the refined exponent e = 1/2 - 1/(N^2 + 1).
inline SatakeParameter sample_t1(int n, double p, Engine& rng) {
  detail::require(p > 1.0, "sample_t1: p must exceed 1");
  const SatakeParameter base = sample_st(n, rng);
  // centring can at most double a log-radius, hence the factor 1/2
  const double spread = 0.99 * t1_exponent(n, true) * std::log(p) / 2.0;
  std::uniform_real_distribution<double> radial(-spread, spread);
  std::vector<double> logs(static_cast<std::size_t>(n));
  double mean = 0.0;
  for (double& l : logs) {
    l = radial(rng);
    mean += l;
  }
  mean /= n;
  std::vector<Complex> a(base.alphas().begin(), base.alphas().end());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= std::exp(logs[i] - mean);
  return canonicalize(a);
}

namespace detail {

inline constexpr std::int64_t kChunkSamples = 4096;

struct Moments {
  std::int64_t count = 0;
  Complex mean{};
  double m2 = 0.0;

  void push(Complex x) {
    ++count;
    const Complex delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += std::real(std::conj(delta) * (x - mean));
  }

  void merge(const Moments& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(count), nb = static_cast<double>(o.count);
    const Complex delta = o.mean - mean;
    count += o.count;
    mean += delta * (nb / static_cast<double>(count));
    m2 += o.m2 + std::norm(delta) * na * nb / static_cast<double>(count);
  }

  McEstimate estimate() const {
    McEstimate e;
    e.mean = mean;
    e.samples = count;
    e.std_error = count > 1 ? std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count)) : 0.0;
    return e;
  }
};

// Runs body(chunk) for every chunk, assigning chunk c to worker c % workers.
template <class Body>
void for_each_chunk(std::int64_t chunks, int workers, Body&& body) {
  workers = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::int64_t>(chunks, 1))));
  if (workers == 1) {
    for (std::int64_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::int64_t c = w; c < chunks; c += workers) body(c);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace detail

/// Monte Carlo estimates of several integrals over T_0/W from one shared
/// sample set. f(x, out) writes one value per integrand into out.
///
/// Samples are cut into fixed chunks; chunk c draws from RngSeed{seed, c}
/// and partial moments are merged in chunk order, so the result is bitwise
/// independent of the worker count.
template <class F>
std::vector<McEstimate> mc_integrate_many(F&& f, std::size_t integrands, int n, std::int64_t m,
                                          std::uint64_t seed, int workers = 1) {
  detail::require_rank(n);
  detail::require(m >= 2, "mc_integrate needs at least 2 samples");
  detail::require(workers >= 1, "worker count must be >= 1");
  const std::int64_t chunks = (m + detail::kChunkSamples - 1) / detail::kChunkSamples;
  std::vector<std::vector<detail::Moments>> partial(
      static_cast<std::size_t>(chunks), std::vector<detail::Moments>(integrands));

  detail::for_each_chunk(chunks, workers, [&](std::int64_t c) {
    Engine rng = make_engine({seed, static_cast<std::uint64_t>(c)});
    const std::int64_t begin = c * detail::kChunkSamples;
    const std::int64_t end = std::min(m, begin + detail::kChunkSamples);
    std::vector<Complex> values(integrands);
    auto& acc = partial[static_cast<std::size_t>(c)];
    for (std::int64_t s = begin; s < end; ++s) {
      const SatakeParameter x = sample_st(n, rng);
      f(x, std::span<Complex>(values));
      for (std::size_t k = 0; k < integrands; ++k) acc[k].push(values[k]);
    }
  });

  std::vector<detail::Moments> total(integrands);
  for (const auto& chunk : partial) {
    for (std::size_t k = 0; k < integrands; ++k) total[k].merge(chunk[k]);
  }
  std::vector<McEstimate> out;
  out.reserve(integrands);
  for (const auto& t : total) out.push_back(t.estimate());
  return out;
}

template <class F>
McEstimate mc_integrate(F&& f, int n, std::int64_t m, RngSeed seed, int workers = 1) {
  // the stream field offsets the chunk streams so distinct streams never share samples
  const std::uint64_t base = seed.seed ^ (seed.stream * 0x9e3779b97f4a7c15ull);
  return mc_integrate_many(
      [&](const SatakeParameter& x, std::span<Complex> out) { out[0] = f(x); }, 1, n, m, base,
      workers)[0];
}

/// The character monomial prod_k chi_k^{i_k} conj(chi_k)^{i'_k} at x.
inline Complex character_monomial(const TensorSpec& spec, const SatakeParameter& x) {
  detail::require(spec.n() == x.n(), "monomial rank does not match parameter");
  const auto chi = varrho(x);
  Complex v{1.0, 0.0};
  for (int k = 1; k < spec.n(); ++k) {
    const Complex c = chi[static_cast<std::size_t>(k - 1)];
    for (int r = 0; r < spec.power(k); ++r) v *= c;
    for (int r = 0; r < spec.conj_power(k); ++r) v *= std::conj(c);
  }
  return v;
}

/// Semicircle density (1/pi) sqrt(1 - x^2/4) on [-2, 2], 0 outside.
inline double st_density_gl2(double x) {
  if (std::abs(x) >= 2.0) return 0.0;
  return std::sqrt(1.0 - x * x / 4.0) / std::numbers::pi;
}

/// Cumulative distribution of the semicircle law.
inline double st_cdf_gl2(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * std::numbers::pi) +
         std::asin(x / 2.0) / std::numbers::pi;
}

/// p-adic Plancherel density (p + 1) / ((p^{1/2} + p^{-1/2})^2 - x^2)
/// against the semicircle.
inline double plancherel_density_gl2(double x, double p) {
  detail::require(p > 1.0, "plancherel_density_gl2: p must exceed 1");
  const double pole = std::sqrt(p) + 1.0 / std::sqrt(p);
  if (std::abs(x) >= pole) {
    throw Error(ErrorKind::domain, "plancherel_density_gl2: |x| must stay below p^{1/2} + p^{-1/2}");
  }
  return (p + 1.0) / (pole * pole - x * x) * st_density_gl2(x);
}

}  // namespace satotate
