#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <vector>

namespace polar {

class FlagType;
class PolarSpace;
enum class PolarKind;

/// Exact half-integer, stored as twice its value. Used for the type e and for
/// every q-exponent and q-degree, so e = 1/2 never gets rounded.
struct HalfInt {
  int twice = 0;

  static constexpr HalfInt whole(int v) { return HalfInt{2 * v}; }
  static constexpr HalfInt halves(int t) { return HalfInt{t}; }

  bool is_integer() const { return twice % 2 == 0; }
  /// Throws std::domain_error when not integral.
  int as_integer() const;
  double as_double() const { return twice / 2.0; }
  std::string str() const;

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return {a.twice + b.twice}; }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return {a.twice - b.twice}; }
  friend constexpr HalfInt operator*(int k, HalfInt a) { return {k * a.twice}; }
  friend constexpr bool operator==(HalfInt, HalfInt) = default;
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;
};

/// Parameters (n, e, q) of PS(n, e, q); e is carried as 2e.
struct Params {
  int n = 0;
  int twice_e = 0;
  int q = 0;

  HalfInt e() const { return HalfInt{twice_e}; }
  /// Throws std::invalid_argument for n < 1, 2e outside {0..4} or q not a prime power.
  void validate() const;
  /// e >= 1 or n even: where the ratio bound for chambers is attained.
  bool tight_regime() const { return twice_e >= 2 || n % 2 == 0; }
};

Params params_of(const PolarSpace& space);

/// Exact count together with the q-degree of the q-polynomial it evaluates.
struct ExactCount {
  mpz_class value;
  HalfInt qdegree;
};

/// q^x for a half-integral x. A half-odd exponent needs q to be a perfect
/// square; otherwise std::domain_error. Negative exponents also throw.
mpz_class qpow(int q, HalfInt exponent);

/// Gaussian binomial [s choose m]_q; zero outside 0 <= m <= s.
ExactCount gauss(int s, int m, int q);

/// z_s = prod_{i=1..s} [i choose 1]_q, the number of maximal flags of an s-space.
ExactCount z(int s, int q);

/// Phi_m^s(n, e, q): s-spaces through a fixed m-space.
ExactCount phi(int m, int s, const Params& p);

/// Number of (j+k+l)-spaces meeting a fixed m-space U in a j-space and U^⊥
/// in a (j+l)-space.
ExactCount count_configuration(int m, int j, int k, int l, const Params& p);

/// |F_J|: flags of type J.
ExactCount flag_count(const FlagType& type, const Params& p);

/// Chambers containing a fixed flag of type J.
ExactCount chambers_through_flag(const FlagType& type, const Params& p);

/// Points of PS(rank, e, q) (zero for rank 0).
ExactCount point_count(int rank, int twice_e, int q);

/// |lambda_s| = q^{s(2n+e-1/2-3s/2)-n-e+1}. Requires the tight regime.
ExactCount lambda_subspace(int s, const Params& p);

/// |lambda_[n]| = q^{(n-1)(n+e-1)}. Requires the tight regime.
ExactCount lambda_chambers(const Params& p);

/// |lambda_J| = d_J / q^{n+e-1} with d_J = q^{deg |F_J|} the valency of Gamma_J.
ExactCount lambda_flags(const FlagType& type, const Params& p);

/// Valency q^{deg |F_J|} of the opposition graph on flags of type J.
ExactCount opposition_degree(const FlagType& type, const Params& p);

/// |F_J| / (q^{n+e-1} + 1). Throws std::domain_error outside the tight regime
/// or if the division is not exact.
ExactCount ratio_bound(const FlagType& type, const Params& p);

/// h_{n,s} = [n choose s] prod_{i=2..s} (q^{n+e-i} + 1).
ExactCount h_ns(int s, const Params& p);

/// q-degree helpers.
HalfInt deg_gauss(int s, int m);
HalfInt deg_z(int s);
HalfInt deg_phi(int m, int s, const Params& p);
/// deg(z_s z_{n-s} Phi_s^n): chambers through an s-space.
HalfInt deg_chambers_through(int s, const Params& p);
HalfInt deg_lambda_subspace(int s, const Params& p);
HalfInt deg_lambda_chambers(const Params& p);

/// q^{deg(z_s z_{n-s} Phi_s^n)}: chambers through S opposite a chamber C with S ∩ C_s^⊥ = 0.
ExactCount basic_power(int s, const Params& p);
/// q^{deg Phi_m^s}: s-spaces through M opposite an s-space S with M ∩ S^⊥ = 0.
ExactCount heavy_power(int m, int s, const Params& p);
/// Exponent l(J) of the quotient matrix q^l A_J: the q-degree of the chamber
/// extension count of a type-J flag.
HalfInt ell(const FlagType& type, const Params& p);

/// deg(-lambda_s) + deg(z_s z_{n-s} Phi_s^n) == deg(-lambda_[n]).
bool degree_identity_check(const Params& p, int s);

}  // namespace polar
