#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace polar {

/// Field element, stored as the index sum(c_i * p^i) of its coefficient
/// vector in the power basis of the defining polynomial.
using Elem = std::uint8_t;

/// Finite field GF(p^k) with p^k <= 256, backed by full lookup tables.
///
/// The defining polynomial is the Conway polynomial for (p, k), so element
/// indices are stable across runs and platforms. Immutable once built.
class Field {
public:
  static constexpr int kMaxOrder = 256;

  /// Throws std::invalid_argument for non-prime p, k < 1 or p^k > 256.
  static Field make(int p, int k);

  /// Builds GF(q) for a prime power q.
  static Field of_order(int q);

  int p() const { return p_; }
  int k() const { return k_; }
  int q() const { return q_; }

  /// Monic defining polynomial, coefficients from x^0 up to x^k.
  const std::vector<int>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  Elem add(Elem x, Elem y) const { return add_[index(x, y)]; }
  Elem sub(Elem x, Elem y) const { return add_[index(x, neg_[y])]; }
  Elem mul(Elem x, Elem y) const { return mul_[index(x, y)]; }
  Elem neg(Elem x) const { return neg_[x]; }

  /// Throws std::domain_error on zero.
  Elem inv(Elem x) const;
  Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }
  Elem pow(Elem x, std::uint64_t e) const;

  bool has_conjugation() const { return k_ % 2 == 0; }

  /// The involution x -> x^(p^(k/2)). Throws std::domain_error for odd k.
  Elem conj(Elem x) const;

  /// Image of an integer under Z -> GF(p) -> GF(q).
  Elem from_int(long long v) const;

  /// Multiplicative generator: the class of x modulo the Conway polynomial
  /// (for k = 1, the least primitive root).
  Elem generator() const { return generator_; }

  /// Square root of q when q is a perfect square, otherwise 0.
  int sqrt_order() const;

private:
  Field() = default;
  std::size_t index(Elem x, Elem y) const {
    return static_cast<std::size_t>(x) * static_cast<std::size_t>(q_) + y;
  }

  int p_ = 0;
  int k_ = 0;
  int q_ = 0;
  Elem generator_ = 0;
  std::vector<int> modulus_;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
  std::vector<Elem> neg_;
  std::vector<Elem> inv_;
  std::vector<Elem> conj_;
};

bool is_prime(int p);

/// Splits q = p^k; returns {0, 0} when q is not a prime power.
std::pair<int, int> prime_power_decomposition(int q);

/// Hard-coded Conway polynomial for (p, k), low-degree coefficient first.
/// Throws std::invalid_argument outside the supported range.
std::vector<int> conway_polynomial(int p, int k);

}  // namespace polar
