#include "polar_ekr/modular.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

namespace polar::modp {

std::vector<std::uint32_t> elimination_primes(int count) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = (1U << 26) - 1; out.size() < static_cast<std::size_t>(count) && c > 2; c -= 2) {
    bool prime = true;
    for (std::uint32_t d = 3; d * d <= c && prime; d += 2) prime = c % d != 0;
    if (prime) out.push_back(c);
  }
  return out;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
  while (nr != 0) {
    const std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw std::domain_error("inverse_mod: not invertible");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

namespace {

// y <- (y + f x) mod p on [0, len); all operands are residues in [0, p).
__attribute__((target_clones("avx2", "default")))
void axpy_mod(double* __restrict y, const double* __restrict x, double f, std::size_t len, double p, double pinv) {
  constexpr double kRound = 6755399441055744.0;  // 1.5 * 2^52: adding it rounds to an integer
  for (std::size_t j = 0; j < len; ++j) {
    const double t = y[j] + f * x[j];
    const double q = (t * pinv + kRound) - kRound;
    double r = t - q * p;
    r += r < 0.0 ? p : 0.0;
    y[j] = r;
  }
}

__attribute__((target_clones("avx2", "default")))
void scale_mod(double* __restrict y, double f, std::size_t len, double p, double pinv) {
  constexpr double kRound = 6755399441055744.0;
  for (std::size_t j = 0; j < len; ++j) {
    const double t = f * y[j];
    const double q = (t * pinv + kRound) - kRound;
    double r = t - q * p;
    r += r < 0.0 ? p : 0.0;
    y[j] = r;
  }
}

}  // namespace

Echelon echelon_mod_p(std::span<const std::int64_t> a, int rows, int cols, std::uint32_t prime) {
  if (prime >= (1U << 26)) throw std::invalid_argument("echelon_mod_p: prime must be below 2^26");
  if (a.size() != static_cast<std::size_t>(rows) * cols) throw std::invalid_argument("echelon_mod_p: size mismatch");
  const double p = prime;
  const double pinv = 1.0 / p;
  const std::size_t w = cols;
  std::vector<double> m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t v = a[i] % static_cast<std::int64_t>(prime);
    if (v < 0) v += prime;
    m[i] = static_cast<double>(v);
  }

  Echelon out;
  out.prime = prime;
  out.rows = rows;
  out.cols = cols;
  int r = 0;
  for (int c = 0; c < cols; ++c) {
    if (r == rows) {
      out.free.push_back(c);
      continue;
    }
    int piv = r;
    while (piv < rows && m[piv * w + c] == 0.0) ++piv;
    if (piv == rows) {
      out.free.push_back(c);
      continue;
    }
    if (piv != r)
      for (std::size_t j = c; j < w; ++j) std::swap(m[piv * w + j], m[r * w + j]);
    double* prow = m.data() + r * w + c;
    const std::size_t len = w - c;
    const double inv = static_cast<double>(inverse_mod(static_cast<std::uint64_t>(prow[0]), prime));
    scale_mod(prow, inv, len, p, pinv);
    for (int i = r + 1; i < rows; ++i) {
      double* row = m.data() + i * w + c;
      if (row[0] == 0.0) continue;
      axpy_mod(row, prow, p - row[0], len, p, pinv);
    }
    out.pivots.push_back(c);
    ++r;
  }

  // back substitution: R_F = U_P^{-1} U_F with U_P unit upper triangular
  const std::size_t k = out.free.size();
  std::vector<double> x(static_cast<std::size_t>(r) * k);
  for (int i = 0; i < r; ++i)
    for (std::size_t j = 0; j < k; ++j) x[i * k + j] = m[i * w + out.free[j]];
  for (int i = r - 1; i >= 0; --i) {
    double* xi = x.data() + i * k;
    for (int l = i + 1; l < r; ++l) {
      const double u = m[i * w + out.pivots[l]];
      if (u == 0.0) continue;
      axpy_mod(xi, x.data() + l * k, p - u, k, p, pinv);
    }
  }
  out.reduced.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.reduced[i] = static_cast<std::uint32_t>(x[i]);
  return out;
}

std::optional<std::pair<std::int64_t, std::int64_t>> rational_reconstruct(std::int64_t a, std::int64_t m) {
  if (m <= 1) return std::nullopt;
  a %= m;
  if (a < 0) a += m;
  const auto bound = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(m) / 2.0L));
  // half extended Euclid on (m, a), tracking the cofactor of a
  __int128 r0 = m, r1 = a;
  __int128 t0 = 0, t1 = 1;
  while (r1 > bound) {
    const __int128 q = r0 / r1;
    const __int128 r2 = r0 - q * r1;
    const __int128 t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  __int128 num = r1;
  __int128 den = t1;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (den == 0 || den > bound) return std::nullopt;
  // gcd(num, den) must be 1
  __int128 g0 = num < 0 ? -num : num, g1 = den;
  while (g1 != 0) {
    const __int128 t = g0 % g1;
    g0 = g1;
    g1 = t;
  }
  if (g0 != 1) return std::nullopt;
  return std::make_pair(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace polar::modp
