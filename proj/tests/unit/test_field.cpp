#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "polar_ekr/field.hpp"

using polar::Elem;
using polar::Field;

namespace {

// Independent polynomial arithmetic over GF(p), low coefficient first.
using Poly = std::vector<int>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly polymod(Poly a, const Poly& m, int p) {
  trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= dm) {
    const int c = a.back();
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    for (int i = 0; i <= dm; ++i) a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

Poly polymul(const Poly& a, const Poly& b, const Poly& m, int p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  return polymod(out, m, p);
}

Poly polypow(Poly base, long long e, const Poly& m, int p) {
  Poly out{1};
  base = polymod(base, m, p);
  while (e > 0) {
    if (e & 1) out = polymul(out, base, m, p);
    base = polymul(base, base, m, p);
    e >>= 1;
  }
  return out;
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// x has multiplicative order exactly p^k - 1 modulo m (so m is primitive).
bool is_primitive(const Poly& m, int p, int k) {
  const long long order = ipow(p, k) - 1;
  if (polypow({0, 1}, order, m, p) != Poly{1}) return false;
  long long r = order;
  for (long long d = 2; d <= r; ++d) {
    if (r % d != 0) continue;
    while (r % d == 0) r /= d;
    if (polypow({0, 1}, order / d, m, p) == Poly{1}) return false;
  }
  return true;
}

// Evaluates g(x^e) modulo m.
Poly compose_power(const Poly& g, long long e, const Poly& m, int p) {
  const Poly xe = polypow({0, 1}, e, m, p);
  Poly acc{};
  Poly power{1};
  for (int c : g) {
    Poly term = power;
    for (int& t : term) t = t * c % p;
    Poly sum(std::max(acc.size(), term.size()), 0);
    for (std::size_t i = 0; i < acc.size(); ++i) sum[i] = acc[i];
    for (std::size_t i = 0; i < term.size(); ++i) sum[i] = (sum[i] + term[i]) % p;
    acc = polymod(sum, m, p);
    power = polymul(power, xe, m, p);
  }
  return acc;
}

// Conway polynomial from its definition: the least primitive polynomial in
// the alternating-sign lexicographic order compatible with every proper divisor.
Poly conway_oracle(int p, int k, std::map<std::pair<int, int>, Poly>& memo) {
  if (auto it = memo.find({p, k}); it != memo.end()) return it->second;
  const long long total = ipow(p, k);
  for (long long code = 0; code < total; ++code) {
    // digit i (most significant first) encodes alpha_{k-1-i}
    Poly m(k + 1, 0);
    m[k] = 1;
    long long c = code;
    for (int i = 0; i < k; ++i) {
      const int idx = i;  // coefficient x^idx, least significant digit
      const int alpha = static_cast<int>(c % p);
      c /= p;
      const int sign_odd = (k - idx) % 2;
      m[idx] = sign_odd ? (p - alpha) % p : alpha;
    }
    if (m[0] == 0) continue;
    if (!is_primitive(m, p, k)) continue;
    bool compatible = true;
    for (int d = 1; d < k && compatible; ++d) {
      if (k % d != 0) continue;
      const Poly sub = conway_oracle(p, d, memo);
      compatible = compose_power(sub, (total - 1) / (ipow(p, d) - 1), m, p).empty();
    }
    if (compatible) {
      memo[{p, k}] = m;
      return m;
    }
  }
  throw std::logic_error("no Conway polynomial found");
}

std::vector<int> small_orders() { return {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}; }

}  // namespace

TEST(Field, PrimeFieldTwoIsXor) {
  const Field f = Field::make(2, 1);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) EXPECT_EQ(f.add(a, b), a ^ b);
}

TEST(Field, FourElementsSquareOfGenerator) {
  const Field f = Field::make(2, 2);
  const Elem a = 2;  // the class of x
  EXPECT_EQ(f.mul(a, a), f.add(a, 1));
  EXPECT_EQ(f.conj(a), f.add(a, 1));
  EXPECT_EQ(f.conj(f.add(a, 1)), a);
}

TEST(Field, InverseOfTwoModThree) {
  const Field f = Field::make(3, 1);
  EXPECT_EQ(f.inv(2), 2);
}

TEST(Field, RejectsBadParameters) {
  EXPECT_THROW(Field::make(4, 1), std::invalid_argument);
  EXPECT_THROW(Field::make(2, 9), std::invalid_argument);
  EXPECT_THROW(Field::make(257, 1), std::invalid_argument);
  EXPECT_THROW(Field::of_order(6), std::invalid_argument);
  EXPECT_THROW(Field::make(2, 3).conj(1), std::domain_error);
  EXPECT_THROW(Field::make(5, 1).inv(0), std::domain_error);
}

TEST(Field, ExhaustiveAxiomsSmallOrders) {
  for (int q : small_orders()) {
    const Field f = Field::of_order(q);
    for (int x = 0; x < q; ++x) {
      EXPECT_EQ(f.add(x, 0), x);
      EXPECT_EQ(f.mul(x, 1), x);
      EXPECT_EQ(f.add(x, f.neg(x)), 0);
      if (x != 0) EXPECT_EQ(f.mul(x, f.inv(x)), 1) << "q=" << q << " x=" << x;
      for (int y = 0; y < q; ++y) {
        EXPECT_EQ(f.add(x, y), f.add(y, x));
        EXPECT_EQ(f.mul(x, y), f.mul(y, x));
        if (x != 0 && y != 0) EXPECT_NE(f.mul(x, y), 0);
        for (int z = 0; z < q; ++z) {
          ASSERT_EQ(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
          ASSERT_EQ(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
          ASSERT_EQ(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        }
      }
    }
  }
}

TEST(Field, ConjugationIsInvolutoryAutomorphism) {
  for (int q : {4, 9, 16, 25, 49, 64, 81, 121, 169, 256}) {
    const Field f = Field::of_order(q);
    int fixed = 0;
    for (int x = 0; x < q; ++x) {
      EXPECT_EQ(f.conj(f.conj(x)), x);
      if (f.conj(x) == x) ++fixed;
      for (int y = 0; y < q; ++y) {
        ASSERT_EQ(f.conj(f.mul(x, y)), f.mul(f.conj(x), f.conj(y)));
        ASSERT_EQ(f.conj(f.add(x, y)), f.add(f.conj(x), f.conj(y)));
      }
    }
    EXPECT_EQ(fixed, f.sqrt_order()) << "q=" << q;
  }
}

TEST(Field, GeneratorHasFullOrder) {
  for (int q = 2; q <= 256; ++q) {
    if (polar::prime_power_decomposition(q).first == 0) continue;
    const Field f = Field::of_order(q);
    const Elem g = f.generator();
    int order = 1;
    Elem x = g;
    while (x != 1) {
      x = f.mul(x, g);
      ++order;
    }
    EXPECT_EQ(order, q - 1) << "q=" << q;
  }
}

TEST(Field, HardCodedModuliMatchConwayDefinition) {
  std::map<std::pair<int, int>, Poly> memo;
  for (int q = 2; q <= 256; ++q) {
    const auto [p, k] = polar::prime_power_decomposition(q);
    if (p == 0) continue;
    const Poly expected = conway_oracle(p, k, memo);
    EXPECT_EQ(polar::conway_polynomial(p, k), expected) << "p=" << p << " k=" << k;
    EXPECT_EQ(Field::make(p, k).modulus(), expected);
  }
}

TEST(Field, ElementIndexEncodesPowerBasis) {
  // index = sum c_i p^i: in GF(9) the element x + 2 has index 1*3 + 2 = 5
  const Field f = Field::make(3, 2);
  const Elem x = 3;
  EXPECT_EQ(f.add(x, 2), 5);
  EXPECT_EQ(f.from_int(-1), 2);
  EXPECT_EQ(f.from_int(7), 1);
}
