#pragma once

// Exact characters of SU(N) / SL(N, C) irreducibles.
//
// Weight multiplicities come from Freudenthal's recursion run in GL(N)
// coordinates: every weight of V_lambda is a composition of |lambda|, so all
// inner products are plain integer dot products and the all-ones correction
// of the SL(N) form cancels. Tables are stored in the canonical SL(N)
// coordinates of WeightVector.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "satotate/error.hpp"
#include "satotate/weight_lattice.hpp"

namespace satotate {

inline constexpr std::size_t kDefaultTermBudget = 1'000'000;

/// Upper bound on the number of entries any single character table may hold.
struct TermBudget {
  std::size_t max_terms = kDefaultTermBudget;
};

namespace detail {

[[noreturn]] inline void budget_exceeded(std::size_t terms, TermBudget budget) {
  throw Error(ErrorKind::budget_exceeded,
              "character table needs " + std::to_string(terms) + " terms, budget is " +
                  std::to_string(budget.max_terms));
}

}  // namespace detail

/// Weight-multiplicity map of a (possibly virtual) character.
class CharacterTable {
 public:
  using Terms = std::map<WeightVector, std::int64_t>;

  explicit CharacterTable(int n) : n_(n) { detail::require_rank(n); }

  /// The character of the trivial representation, e^0.
  static CharacterTable one(int n) {
    CharacterTable t(n);
    t.add(WeightVector(std::vector<int>(static_cast<std::size_t>(n), 0)), 1);
    return t;
  }

  int n() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  std::int64_t multiplicity(const WeightVector& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? 0 : it->second;
  }

  /// Adds c to the multiplicity of w; zero entries are dropped.
  void add(const WeightVector& w, std::int64_t c) {
    detail::require(w.n() == n_, "weight rank mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void add_scaled(const CharacterTable& other, std::int64_t c) {
    detail::require(other.n_ == n_, "character rank mismatch");
    for (const auto& [w, m] : other.terms_) add(w, c * m);
  }

  /// Sum of multiplicities; the dimension for a genuine character.
  std::int64_t mass() const noexcept {
    std::int64_t s = 0;
    for (const auto& [w, m] : terms_) s += m;
    return s;
  }

  /// Restriction to dominant weights.
  std::map<DominantWeight, std::int64_t> dominant_part() const {
    std::map<DominantWeight, std::int64_t> out;
    for (const auto& [w, m] : terms_) {
      if (is_dominant(w)) out.emplace(w.dominant(), m);
    }
    return out;
  }

  bool operator==(const CharacterTable&) const = default;

 private:
  int n_;
  Terms terms_;
};

/// Tensor product of fundamental representations,
/// (x)_k V_k^{(x) i_k} (x) V_{N-k}^{(x) i'_k}, stored as
/// (i_1, i'_1, ..., i_{N-1}, i'_{N-1}).
class TensorSpec {
 public:
  TensorSpec(int n, std::vector<int> exponents) : n_(n), exponents_(std::move(exponents)) {
    detail::require_rank(n);
    detail::require(exponents_.size() == static_cast<std::size_t>(2 * (n - 1)),
                    "tensor spec for N=" + std::to_string(n) + " needs " +
                        std::to_string(2 * (n - 1)) + " exponents");
    for (int e : exponents_) detail::require(e >= 0, "tensor spec exponents must be >= 0");
  }

  static TensorSpec zero(int n) {
    return TensorSpec(n, std::vector<int>(static_cast<std::size_t>(2 * (n - 1)), 0));
  }

  /// Every spec of rank n with total degree <= max_degree, in lexicographic
  /// order of the exponent vector.
  static std::vector<TensorSpec> enumerate(int n, int max_degree) {
    detail::require_rank(n);
    const std::size_t len = static_cast<std::size_t>(2 * (n - 1));
    std::vector<TensorSpec> out;
    std::vector<int> e(len, 0);
    auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
      if (pos == len) {
        out.emplace_back(n, e);
        return;
      }
      for (int v = 0; v <= left; ++v) {
        e[pos] = v;
        self(self, pos + 1, left - v);
      }
      e[pos] = 0;
    };
    rec(rec, 0, max_degree);
    return out;
  }

  int n() const noexcept { return n_; }
  std::span<const int> exponents() const noexcept { return exponents_; }
  /// i_k, the power of chi_k (1 <= k <= N-1).
  int power(int k) const { return exponents_.at(static_cast<std::size_t>(2 * (k - 1))); }
  /// i'_k, the power of conj(chi_k) = chi_{N-k}.
  int conj_power(int k) const { return exponents_.at(static_cast<std::size_t>(2 * (k - 1) + 1)); }

  int degree() const noexcept { return std::accumulate(exponents_.begin(), exponents_.end(), 0); }

  /// Number of boxes of the GL(N) polynomial representation; a trivial
  /// SL(N) constituent needs this to be divisible by N.
  int boxes() const {
    int s = 0;
    for (int k = 1; k < n_; ++k) s += k * power(k) + (n_ - k) * conj_power(k);
    return s;
  }

  std::string str() const { return detail::join_ints(exponents_); }

  auto operator<=>(const TensorSpec&) const = default;

 private:
  int n_;
  std::vector<int> exponents_;
};

namespace detail {

using Composition = std::vector<int>;

inline bool dominated_by(std::span<const int> mu, std::span<const int> lambda) {
  long a = 0, b = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    a += mu[i];
    b += lambda[i];
    if (a > b) return false;
  }
  return true;
}

inline long depth_below(std::span<const int> mu, std::span<const int> lambda) {
  long a = 0, b = 0, d = 0;
  for (std::size_t i = 0; i + 1 < mu.size(); ++i) {
    a += mu[i];
    b += lambda[i];
    d += b - a;
  }
  return d;
}

/// Partitions of `total` into exactly n non-negative parts that are
/// dominated by lambda.
inline std::vector<Composition> dominant_weights_below(std::span<const int> lambda) {
  const int n = static_cast<int>(lambda.size());
  const int total = std::accumulate(lambda.begin(), lambda.end(), 0);
  std::vector<Composition> out;
  Composition cur(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int pos, int left, int cap, long prefix, long lprefix) -> void {
    if (pos == n - 1) {
      if (left > cap) return;
      cur[static_cast<std::size_t>(pos)] = left;
      out.push_back(cur);
      return;
    }
    const long lp = lprefix + lambda[static_cast<std::size_t>(pos)];
    const int hi = std::min(cap, left);
    for (int v = hi; v >= 0; --v) {
      if (prefix + v > lp) continue;
      // remaining n-pos-1 parts are each <= v
      if (static_cast<long>(v) * (n - pos - 1) < left - v) break;
      cur[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, left - v, v, prefix + v, lp);
    }
  };
  rec(rec, 0, total, total, 0, 0);
  return out;
}

inline long dot_rho_shift(std::span<const int> mu) {
  // |mu + rho|^2 with rho = (N-1, ..., 1, 0)
  const long n = static_cast<long>(mu.size());
  long s = 0;
  for (long i = 0; i < n; ++i) {
    const long v = mu[static_cast<std::size_t>(i)] + (n - 1 - i);
    s += v * v;
  }
  return s;
}

/// Dominant-weight multiplicities of V_lambda (Kostka numbers K_{lambda mu})
/// keyed by GL(N) partitions of |lambda|.
inline std::map<Composition, std::int64_t> freudenthal(std::span<const int> lambda) {
  auto weights = dominant_weights_below(lambda);
  std::stable_sort(weights.begin(), weights.end(), [&](const Composition& a, const Composition& b) {
    return depth_below(a, lambda) < depth_below(b, lambda);
  });

  const long top = dot_rho_shift(lambda);
  const std::size_t n = lambda.size();
  std::map<Composition, std::int64_t> mult;
  Composition shifted(n), sorted(n);

  for (const Composition& mu : weights) {
    if (std::equal(mu.begin(), mu.end(), lambda.begin())) {
      mult[mu] = 1;
      continue;
    }
    std::int64_t num = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (int k = 1;; ++k) {
          if (mu[j] - k < 0) break;
          shifted = mu;
          shifted[i] += k;
          shifted[j] -= k;
          sorted = shifted;
          std::sort(sorted.begin(), sorted.end(), std::greater<>());
          if (!dominated_by(sorted, lambda)) break;
          auto it = mult.find(sorted);
          if (it == mult.end()) {
            throw std::logic_error("freudenthal: dominant weight visited out of order");
          }
          num += it->second * static_cast<std::int64_t>(mu[i] - mu[j] + 2 * k);
        }
      }
    }
    num *= 2;
    const std::int64_t denom = top - dot_rho_shift(mu);
    if (denom <= 0 || num % denom != 0) {
      throw std::logic_error("freudenthal: non-integral multiplicity");
    }
    mult[mu] = num / denom;
  }
  return mult;
}

inline std::uint64_t distinct_permutations(Composition c) {
  std::sort(c.begin(), c.end());
  // multinomial n! / prod(run!) computed incrementally; exact as binomial steps
  std::uint64_t count = 1;
  std::uint64_t placed = 0;
  for (std::size_t i = 0; i < c.size();) {
    std::size_t j = i;
    while (j < c.size() && c[j] == c[i]) ++j;
    for (std::size_t r = 1; r <= j - i; ++r) {
      ++placed;
      count = count * placed / r;
    }
    i = j;
  }
  return count;
}

struct TableCache {
  std::shared_mutex mutex;
  std::unordered_map<DominantWeight, std::shared_ptr<const CharacterTable>> tables;
  std::unordered_map<DominantWeight, std::shared_ptr<const std::map<DominantWeight, std::int64_t>>>
      dominant;
};

inline TableCache& table_cache() {
  static TableCache cache;
  return cache;
}

}  // namespace detail

/// Multiplicities of the dominant weights of V_mu.
inline std::shared_ptr<const std::map<DominantWeight, std::int64_t>> dominant_multiplicities(
    const DominantWeight& mu) {
  auto& cache = detail::table_cache();
  {
    std::shared_lock lock(cache.mutex);
    if (auto it = cache.dominant.find(mu); it != cache.dominant.end()) return it->second;
  }
  auto result = std::make_shared<std::map<DominantWeight, std::int64_t>>();
  for (const auto& [w, m] : detail::freudenthal(mu.parts())) {
    result->emplace(WeightVector(w).dominant(), m);
  }
  std::unique_lock lock(cache.mutex);
  return cache.dominant.try_emplace(mu, std::move(result)).first->second;
}

/// Full weight table of V_mu: every weight with its exact multiplicity.
inline std::shared_ptr<const CharacterTable> weight_table_ptr(const DominantWeight& mu,
                                                             TermBudget budget = {}) {
  auto& cache = detail::table_cache();
  {
    std::shared_lock lock(cache.mutex);
    if (auto it = cache.tables.find(mu); it != cache.tables.end()) {
      if (it->second->size() > budget.max_terms) detail::budget_exceeded(it->second->size(), budget);
      return it->second;
    }
  }
  const auto dom = dominant_multiplicities(mu);
  std::uint64_t terms = 0;
  for (const auto& [w, m] : *dom) {
    terms += detail::distinct_permutations(std::vector<int>(w.parts().begin(), w.parts().end()));
    if (terms > budget.max_terms) detail::budget_exceeded(terms, budget);
  }

  auto table = std::make_shared<CharacterTable>(mu.n());
  for (const auto& [w, m] : *dom) {
    std::vector<int> perm(w.parts().begin(), w.parts().end());
    std::sort(perm.begin(), perm.end());
    do {
      table->add(WeightVector(perm), m);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  std::unique_lock lock(cache.mutex);
  return cache.tables.try_emplace(mu, std::move(table)).first->second;
}

inline CharacterTable weight_table(const DominantWeight& mu, TermBudget budget = {}) {
  return *weight_table_ptr(mu, budget);
}

/// Weyl dimension formula prod_{i<j} (l_i - l_j + j - i) / (j - i).
inline std::int64_t dim(const DominantWeight& mu) {
  using u128 = unsigned __int128;
  const int n = mu.n();
  u128 num = 1, den = 1;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      num *= static_cast<u128>(mu[static_cast<std::size_t>(i)] - mu[static_cast<std::size_t>(j)] + j - i);
      den *= static_cast<u128>(j - i);
      u128 a = num, b = den;
      while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
      }
      num /= a;
      den /= a;
    }
  }
  if (den != 1 || num > static_cast<u128>(INT64_MAX)) {
    throw Error(ErrorKind::budget_exceeded, "dimension of " + mu.str() + " does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(num);
}

/// Convolution of weight-multiplicity maps.
inline CharacterTable product(const CharacterTable& a, const CharacterTable& b,
                              TermBudget budget = {}) {
  detail::require(a.n() == b.n(), "product of characters of different rank");
  std::unordered_map<WeightVector, std::int64_t> acc;
  for (const auto& [wa, ma] : a.terms()) {
    for (const auto& [wb, mb] : b.terms()) {
      acc[wa + wb] += ma * mb;
      if (acc.size() > budget.max_terms) detail::budget_exceeded(acc.size(), budget);
    }
  }
  CharacterTable out(a.n());
  for (const auto& [w, m] : acc) out.add(w, m);
  return out;
}

/// Character of the tensor product named by spec.
inline CharacterTable tensor_product_table(const TensorSpec& spec, TermBudget budget = {}) {
  const int n = spec.n();
  CharacterTable acc = CharacterTable::one(n);
  for (int k = 1; k < n; ++k) {
    const auto& vk = *weight_table_ptr(DominantWeight::fundamental(n, k), budget);
    const auto& vnk = *weight_table_ptr(DominantWeight::fundamental(n, n - k), budget);
    for (int r = 0; r < spec.power(k); ++r) acc = product(acc, vk, budget);
    for (int r = 0; r < spec.conj_power(k); ++r) acc = product(acc, vnk, budget);
  }
  return acc;
}

namespace detail {

// 2(rho, w): strictly increases along every positive root and is invariant
// under the all-ones shift, so its maximiser is dominance-maximal.
inline long rho_height(const DominantWeight& w) {
  const long n = w.n();
  long s = 0;
  for (long i = 0; i < n; ++i) s += (n - 1 - 2 * i) * w[static_cast<std::size_t>(i)];
  return s;
}

}  // namespace detail

/// Irreducible decomposition of a character by highest-weight peeling.
inline std::map<DominantWeight, std::int64_t> decompose(const CharacterTable& table) {
  auto running = table.dominant_part();
  std::map<DominantWeight, std::int64_t> out;
  while (!running.empty()) {
    auto best = running.begin();
    long best_h = detail::rho_height(best->first);
    for (auto it = std::next(running.begin()); it != running.end(); ++it) {
      const long h = detail::rho_height(it->first);
      if (h > best_h || (h == best_h && best->first < it->first)) {
        best = it;
        best_h = h;
      }
    }
    const DominantWeight top = best->first;
    const std::int64_t c = best->second;
    if (c < 0) throw std::logic_error("decompose: negative multiplicity at " + top.str());
    out.emplace(top, c);
    for (const auto& [w, m] : *dominant_multiplicities(top)) {
      auto [it, inserted] = running.try_emplace(w, -c * m);
      if (!inserted) {
        it->second -= c * m;
        if (it->second == 0) running.erase(it);
      }
    }
  }
  return out;
}

inline std::map<DominantWeight, std::int64_t> tensor_decompose(const TensorSpec& spec,
                                                                TermBudget budget = {}) {
  return decompose(tensor_product_table(spec, budget));
}

/// a_0: multiplicity of the trivial representation in the tensor product,
/// which is also the Sato-Tate integral of the matching character monomial.
inline std::int64_t trivial_multiplicity(const TensorSpec& spec, TermBudget budget = {}) {
  const auto parts = tensor_decompose(spec, budget);
  auto it = parts.find(DominantWeight::zero(spec.n()));
  return it == parts.end() ? 0 : it->second;
}

namespace detail {

inline void require_nonzero(std::span<const Complex> alphas) {
  for (const Complex& a : alphas) {
    if (a == Complex{}) throw Error(ErrorKind::domain, "torus element has a zero eigenvalue");
  }
}

/// Determinant by Gaussian elimination with partial pivoting (row-major m x m).
inline Complex small_det(std::vector<Complex> a, std::size_t m) {
  Complex det{1.0, 0.0};
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < m; ++r) {
      if (std::abs(a[r * m + c]) > std::abs(a[piv * m + c])) piv = r;
    }
    if (a[piv * m + c] == Complex{}) return Complex{};
    if (piv != c) {
      for (std::size_t k = 0; k < m; ++k) std::swap(a[c * m + k], a[piv * m + k]);
      det = -det;
    }
    det *= a[c * m + c];
    for (std::size_t r = c + 1; r < m; ++r) {
      const Complex f = a[r * m + c] / a[c * m + c];
      for (std::size_t k = c; k < m; ++k) a[r * m + k] -= f * a[c * m + k];
    }
  }
  return det;
}

}  // namespace detail

/// Complete homogeneous symmetric polynomials h_0..h_degree from power sums
/// via Newton's identity k h_k = sum_{i=1}^k p_i h_{k-i}.
inline std::vector<Complex> complete_homogeneous(std::span<const Complex> alphas, int degree) {
  const std::size_t d = static_cast<std::size_t>(std::max(degree, 0));
  std::vector<Complex> power(d + 1), h(d + 1);
  std::vector<Complex> pw(alphas.begin(), alphas.end());
  for (std::size_t k = 1; k <= d; ++k) {
    Complex s{};
    for (const Complex& x : pw) s += x;
    power[k] = s;
    for (std::size_t i = 0; i < pw.size(); ++i) pw[i] *= alphas[i];
  }
  h[0] = 1.0;
  for (std::size_t k = 1; k <= d; ++k) {
    Complex s{};
    for (std::size_t i = 1; i <= k; ++i) s += power[i] * h[k - i];
    h[k] = s / static_cast<double>(k);
  }
  return h;
}

/// Elementary symmetric polynomials e_0..e_N of the entries.
inline std::vector<Complex> elementary_symmetric(std::span<const Complex> alphas) {
  std::vector<Complex> e(alphas.size() + 1);
  e[0] = 1.0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    for (std::size_t k = i + 1; k >= 1; --k) e[k] += alphas[i] * e[k - 1];
  }
  return e;
}

/// chi_mu(diag(alphas)) as the Schur polynomial s_mu via the Jacobi-Trudi
/// determinant det[h_{mu_i - i + j}]. Finite at repeated eigenvalues.
inline Complex eval_char(const DominantWeight& mu, std::span<const Complex> alphas) {
  detail::require(alphas.size() == static_cast<std::size_t>(mu.n()),
                  "eval_char: expected " + std::to_string(mu.n()) + " eigenvalues");
  detail::require_nonzero(alphas);
  std::size_t len = 0;
  while (len < static_cast<std::size_t>(mu.n()) && mu[len] > 0) ++len;
  if (len == 0) return Complex{1.0, 0.0};

  const auto h = complete_homogeneous(alphas, mu[0] + static_cast<int>(len) - 1);
  std::vector<Complex> m(len * len);
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = 0; j < len; ++j) {
      const long k = static_cast<long>(mu[i]) - static_cast<long>(i) + static_cast<long>(j);
      m[i * len + j] = k < 0 ? Complex{} : h[static_cast<std::size_t>(k)];
    }
  }
  return detail::small_det(std::move(m), len);
}

/// Weyl's bialternant det(a_i^{mu_j + N - j}) / det(a_i^{N - j}); only
/// defined when the eigenvalues are pairwise distinct.
inline Complex eval_char_bialternant(const DominantWeight& mu, std::span<const Complex> alphas) {
  const std::size_t n = static_cast<std::size_t>(mu.n());
  detail::require(alphas.size() == n, "eval_char_bialternant: eigenvalue count mismatch");
  detail::require_nonzero(alphas);
  std::vector<Complex> num(n * n), den(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const int e0 = static_cast<int>(n - 1 - j);
      num[i * n + j] = std::pow(alphas[i], mu[j] + e0);
      den[i * n + j] = std::pow(alphas[i], e0);
    }
  }
  const Complex d = detail::small_det(std::move(den), n);
  if (std::abs(d) < 1e-300) {
    throw Error(ErrorKind::domain, "bialternant undefined at repeated eigenvalues");
  }
  return detail::small_det(std::move(num), n) / d;
}

/// Sum over dominant mu of (coefficient of e^mu in the product character)
/// * p^{alpha (l_1 + ... + l_{N-1})}, l = aleph_inv(mu). This bounds the
/// multiplicity-weighted sum from above since a_mu <= that coefficient.
inline double dominant_part_sum(const TensorSpec& spec, double p, double alpha,
                                TermBudget budget = {}) {
  detail::require(p > 0.0, "dominant_part_sum: p must be positive");
  const auto table = tensor_product_table(spec, budget);
  double s = 0.0;
  for (const auto& [mu, c] : table.dominant_part()) {
    // l_1 + ... + l_{N-1} telescopes to parts[0]
    s += static_cast<double>(c) * std::pow(p, alpha * mu[0]);
  }
  return s;
}

/// (p^alpha + 1 + p^-alpha)^{i_1 + i'_1 + i_2 + i'_2}; N = 3 only.
inline double specialization_bound_n3(const TensorSpec& spec, double p, double alpha) {
  detail::require(spec.n() == 3, "specialization_bound_n3 requires N = 3");
  detail::require(p > 0.0, "specialization_bound_n3: p must be positive");
  const double x = std::pow(p, alpha);
  return std::pow(x + 1.0 + 1.0 / x, spec.degree());
}

}  // namespace satotate
