#include "polar_ekr/field.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace polar {

namespace {

// Conway polynomials C_{p,k} for p^k <= 256, k >= 2, low coefficient first.
const std::map<std::pair<int, int>, std::vector<int>>& conway_table() {
  static const std::map<std::pair<int, int>, std::vector<int>> table = {
      {{2, 2}, {1, 1, 1}},
      {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},
      {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
      {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
      {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},
      {{3, 4}, {2, 0, 0, 2, 1}},
      {{3, 5}, {1, 2, 0, 0, 0, 1}},
      {{5, 2}, {2, 4, 1}},
      {{5, 3}, {3, 3, 0, 1}},
      {{7, 2}, {3, 6, 1}},
      {{11, 2}, {2, 7, 1}},
      {{13, 2}, {2, 12, 1}},
  };
  return table;
}

int least_primitive_root(int p) {
  if (p == 2) return 1;
  for (int g = 2; g < p; ++g) {
    int order = 1;
    long long x = g;
    while (x != 1) {
      x = x * g % p;
      ++order;
    }
    if (order == p - 1) return g;
  }
  throw std::logic_error("no primitive root");
}

// Polynomial over GF(p) encoded as its coefficient vector (length k).
std::vector<int> decode(int idx, int p, int k) {
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) {
    c[i] = idx % p;
    idx /= p;
  }
  return c;
}

int encode(const std::vector<int>& c, int p) {
  int idx = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) idx = idx * p + *it;
  return idx;
}

}  // namespace

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::pair<int, int> prime_power_decomposition(int q) {
  if (q < 2) return {0, 0};
  int p = 2;
  while (q % p != 0) ++p;
  int k = 0;
  int r = q;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  if (r != 1) return {0, 0};
  return {p, k};
}

std::vector<int> conway_polynomial(int p, int k) {
  if (!is_prime(p)) throw std::invalid_argument("conway_polynomial: p must be prime");
  if (k < 1) throw std::invalid_argument("conway_polynomial: k must be >= 1");
  if (k == 1) {
    if (p > Field::kMaxOrder) throw std::invalid_argument("conway_polynomial: p^k > 256");
    return {(p - least_primitive_root(p)) % p, 1};
  }
  auto it = conway_table().find({p, k});
  if (it == conway_table().end())
    throw std::invalid_argument("conway_polynomial: (" + std::to_string(p) + "," +
                                std::to_string(k) + ") outside supported range");
  return it->second;
}

Field Field::make(int p, int k) {
  if (!is_prime(p)) throw std::invalid_argument("Field: characteristic " + std::to_string(p) + " is not prime");
  if (k < 1) throw std::invalid_argument("Field: extension degree must be >= 1");
  long long q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxOrder) throw std::invalid_argument("Field: order exceeds 256");
  }

  Field f;
  f.p_ = p;
  f.k_ = k;
  f.q_ = static_cast<int>(q);
  f.modulus_ = conway_polynomial(p, k);
  const int n = f.q_;

  f.add_.resize(static_cast<std::size_t>(n) * n);
  f.mul_.resize(static_cast<std::size_t>(n) * n);
  f.neg_.resize(n);
  f.inv_.assign(n, 0);
  f.conj_.assign(n, 0);

  std::vector<std::vector<int>> coeffs(n);
  for (int a = 0; a < n; ++a) coeffs[a] = decode(a, p, k);

  for (int a = 0; a < n; ++a) {
    std::vector<int> neg(k);
    for (int i = 0; i < k; ++i) neg[i] = (p - coeffs[a][i]) % p;
    f.neg_[a] = static_cast<Elem>(encode(neg, p));
    for (int b = 0; b < n; ++b) {
      std::vector<int> sum(k);
      for (int i = 0; i < k; ++i) sum[i] = (coeffs[a][i] + coeffs[b][i]) % p;
      f.add_[f.index(a, b)] = static_cast<Elem>(encode(sum, p));

      // schoolbook product, then reduce by the monic modulus from the top
      std::vector<int> prod(2 * k - 1, 0);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + coeffs[a][i] * coeffs[b][j]) % p;
      for (int deg = 2 * k - 2; deg >= k; --deg) {
        const int c = prod[deg];
        if (c == 0) continue;
        for (int i = 0; i <= k; ++i) {
          int& t = prod[deg - k + i];
          t = ((t - c * f.modulus_[i]) % p + p) % p;
        }
      }
      prod.resize(k);
      f.mul_[f.index(a, b)] = static_cast<Elem>(encode(prod, p));
    }
  }

  for (int a = 1; a < n; ++a)
    for (int b = 1; b < n; ++b)
      if (f.mul_[f.index(a, b)] == 1) {
        f.inv_[a] = static_cast<Elem>(b);
        break;
      }

  if (k == 1) {
    f.generator_ = static_cast<Elem>(least_primitive_root(p));
  } else {
    f.generator_ = static_cast<Elem>(p);  // the class of x
  }

  if (k % 2 == 0) {
    std::uint64_t e = 1;
    for (int i = 0; i < k / 2; ++i) e *= static_cast<std::uint64_t>(p);
    for (int a = 0; a < n; ++a) f.conj_[a] = f.pow(static_cast<Elem>(a), e);
  }
  return f;
}

Field Field::of_order(int q) {
  auto [p, k] = prime_power_decomposition(q);
  if (p == 0) throw std::invalid_argument("Field: " + std::to_string(q) + " is not a prime power");
  return make(p, k);
}

Elem Field::inv(Elem x) const {
  if (x == 0) throw std::domain_error("Field: inverse of zero");
  return inv_[x];
}

Elem Field::pow(Elem x, std::uint64_t e) const {
  Elem result = 1;
  Elem base = x;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

Elem Field::conj(Elem x) const {
  if (k_ % 2 != 0) throw std::domain_error("Field: conjugation requires an even extension degree");
  return conj_[x];
}

Elem Field::from_int(long long v) const {
  long long r = v % p_;
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

int Field::sqrt_order() const {
  if (k_ % 2 != 0) return 0;
  int r = 1;
  for (int i = 0; i < k_ / 2; ++i) r *= p_;
  return r;
}

}  // namespace polar
