#include "polar_ekr/count.hpp"

#include <stdexcept>

#include "polar_ekr/field.hpp"
#include "polar_ekr/flag_type.hpp"
#include "polar_ekr/space.hpp"

namespace polar {

int HalfInt::as_integer() const {
  if (!is_integer()) throw std::domain_error("exponent " + str() + " is not an integer");
  return twice / 2;
}

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

void Params::validate() const {
  if (n < 1) throw std::invalid_argument("Params: rank must be >= 1");
  if (twice_e < 0 || twice_e > 4) throw std::invalid_argument("Params: e must lie in {0, 1/2, 1, 3/2, 2}");
  if (prime_power_decomposition(q).first == 0) throw std::invalid_argument("Params: q must be a prime power");
  if (twice_e % 2 == 1 && Field::of_order(q).sqrt_order() == 0)
    throw std::invalid_argument("Params: half-integral e needs a square q");
}

Params params_of(const PolarSpace& space) {
  return Params{space.rank(), space.twice_e(), space.q()};
}

mpz_class qpow(int q, HalfInt exponent) {
  if (exponent.twice < 0) throw std::domain_error("qpow: negative exponent " + exponent.str());
  mpz_class base = q;
  unsigned long e = static_cast<unsigned long>(exponent.twice / 2);
  if (!exponent.is_integer()) {
    mpz_class root;
    if (!mpz_root(root.get_mpz_t(), base.get_mpz_t(), 2))
      throw std::domain_error("qpow: exponent " + exponent.str() + " needs a square q, got q = " + std::to_string(q));
    base = root;
    e = static_cast<unsigned long>(exponent.twice);
  }
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

namespace {

mpz_class qpow_int(int q, long e) { return qpow(q, HalfInt::whole(static_cast<int>(e))); }

void require_tight(const Params& p, const char* what) {
  if (!p.tight_regime())
    throw std::domain_error(std::string(what) + ": needs e >= 1 or n even");
}

}  // namespace

HalfInt deg_gauss(int s, int m) {
  if (m < 0 || m > s) return HalfInt{};
  return HalfInt::whole(m * (s - m));
}

HalfInt deg_z(int s) { return HalfInt::whole(s * (s - 1) / 2); }

HalfInt deg_phi(int m, int s, const Params& p) {
  // (s-m)(2n - s - m + e - (s-m+1)/2), doubled to stay integral
  const int k = s - m;
  return HalfInt::halves(k * (4 * p.n - 2 * s - 2 * m + p.twice_e - (k + 1)));
}

HalfInt deg_chambers_through(int s, const Params& p) {
  return deg_z(s) + deg_z(p.n - s) + deg_phi(s, p.n, p);
}

HalfInt deg_lambda_subspace(int s, const Params& p) {
  // s(2n + e - 1/2 - 3s/2) - n - e + 1
  return HalfInt::halves(s * (4 * p.n + p.twice_e - 1 - 3 * s) - 2 * p.n - p.twice_e + 2);
}

HalfInt deg_lambda_chambers(const Params& p) {
  return HalfInt::halves((p.n - 1) * (2 * p.n + p.twice_e - 2));
}

ExactCount gauss(int s, int m, int q) {
  if (m < 0 || m > s) return {0, HalfInt{}};
  mpz_class num = 1;
  mpz_class den = 1;
  for (int i = 1; i <= m; ++i) {
    num *= qpow_int(q, s - m + i) - 1;
    den *= qpow_int(q, i) - 1;
  }
  mpz_class value = num / den;
  return {value, deg_gauss(s, m)};
}

ExactCount z(int s, int q) {
  if (s < 0) throw std::invalid_argument("z: s must be >= 0");
  mpz_class value = 1;
  for (int i = 1; i <= s; ++i) value *= gauss(i, 1, q).value;
  return {value, deg_z(s)};
}

ExactCount phi(int m, int s, const Params& p) {
  if (m < 0 || m > s || s > p.n) throw std::invalid_argument("phi: need 0 <= m <= s <= n");
  mpz_class value = gauss(p.n - m, s - m, p.q).value;
  for (int i = 1; i <= s - m; ++i)
    value *= qpow(p.q, HalfInt::whole(p.n - m - i) + p.e()) + 1;
  return {value, deg_phi(m, s, p)};
}

ExactCount count_configuration(int m, int j, int k, int l, const Params& p) {
  if (m < 0 || m > p.n || j < 0 || j > m || k < 0 || k > m - j || l < 0 || l > p.n - m || j + k + l > p.n)
    throw std::invalid_argument("count_configuration: indices out of range");
  // exponent l(m-j) + k(2n - m - j - 2l + e - 1) - k(k-1)/2
  const HalfInt exponent = HalfInt::whole(l * (m - j)) +
                           k * (HalfInt::whole(2 * p.n - m - j - 2 * l - 1) + p.e()) -
                           HalfInt::whole(k * (k - 1) / 2);
  mpz_class value = qpow(p.q, exponent);
  value *= gauss(m, j, p.q).value;
  value *= gauss(m - j, k, p.q).value;
  value *= gauss(p.n - m, l, p.q).value;
  HalfInt degree = exponent + deg_gauss(m, j) + deg_gauss(m - j, k) + deg_gauss(p.n - m, l);
  for (int i = 0; i < l; ++i) {
    const HalfInt x = HalfInt::whole(p.n - m - i - 1) + p.e();
    value *= qpow(p.q, x) + 1;
    degree = degree + x;
  }
  return {value, degree};
}

ExactCount flag_count(const FlagType& type, const Params& p) {
  // top subspaces, then nested flags inside the top one
  const auto& d = type.dims();
  ExactCount out = phi(0, d.back(), p);
  for (std::size_t i = d.size() - 1; i > 0; --i) {
    const ExactCount g = gauss(d[i], d[i - 1], p.q);
    out.value *= g.value;
    out.qdegree = out.qdegree + g.qdegree;
  }
  return out;
}

ExactCount chambers_through_flag(const FlagType& type, const Params& p) {
  const auto& d = type.dims();
  ExactCount out = phi(d.back(), p.n, p);
  auto times = [&out](const ExactCount& c) {
    out.value *= c.value;
    out.qdegree = out.qdegree + c.qdegree;
  };
  times(z(d.front(), p.q));
  times(z(p.n - d.back(), p.q));
  for (std::size_t i = 1; i < d.size(); ++i) times(z(d[i] - d[i - 1], p.q));
  return out;
}

ExactCount point_count(int rank, int twice_e, int q) {
  if (rank == 0) return {0, HalfInt{}};
  return phi(0, 1, Params{rank, twice_e, q});
}

ExactCount lambda_subspace(int s, const Params& p) {
  require_tight(p, "lambda_subspace");
  if (s < 1 || s > p.n) throw std::invalid_argument("lambda_subspace: s out of range");
  const HalfInt d = deg_lambda_subspace(s, p);
  return {qpow(p.q, d), d};
}

ExactCount lambda_chambers(const Params& p) {
  require_tight(p, "lambda_chambers");
  const HalfInt d = deg_lambda_chambers(p);
  return {qpow(p.q, d), d};
}

ExactCount opposition_degree(const FlagType& type, const Params& p) {
  const HalfInt d = flag_count(type, p).qdegree;
  return {qpow(p.q, d), d};
}

ExactCount lambda_flags(const FlagType& type, const Params& p) {
  require_tight(p, "lambda_flags");
  const HalfInt d = flag_count(type, p).qdegree - (HalfInt::whole(p.n - 1) + p.e());
  return {qpow(p.q, d), d};
}

ExactCount ratio_bound(const FlagType& type, const Params& p) {
  require_tight(p, "ratio_bound");
  const ExactCount total = flag_count(type, p);
  const HalfInt shift = HalfInt::whole(p.n - 1) + p.e();
  const mpz_class den = qpow(p.q, shift) + 1;
  if (mpz_divisible_p(total.value.get_mpz_t(), den.get_mpz_t()) == 0)
    throw std::domain_error("ratio_bound: |F_J| not divisible by q^{n+e-1}+1");
  return {total.value / den, total.qdegree - shift};
}

ExactCount h_ns(int s, const Params& p) {
  if (s < 1 || s > p.n) throw std::invalid_argument("h_ns: s out of range");
  ExactCount out = gauss(p.n, s, p.q);
  for (int i = 2; i <= s; ++i) {
    const HalfInt x = HalfInt::whole(p.n - i) + p.e();
    out.value *= qpow(p.q, x) + 1;
    out.qdegree = out.qdegree + x;
  }
  return out;
}

ExactCount basic_power(int s, const Params& p) {
  if (s < 1 || s > p.n) throw std::invalid_argument("basic_power: s out of range");
  const HalfInt d = deg_chambers_through(s, p);
  return {qpow(p.q, d), d};
}

ExactCount heavy_power(int m, int s, const Params& p) {
  if (m < 0 || m > s || s > p.n) throw std::invalid_argument("heavy_power: need 0 <= m <= s <= n");
  const HalfInt d = deg_phi(m, s, p);
  return {qpow(p.q, d), d};
}

HalfInt ell(const FlagType& type, const Params& p) {
  // gaps g contribute g(g-1)/2; the top part contributes (n-t)(n-t+e-1)
  HalfInt out;
  int prev = 0;
  for (int t : type.dims()) {
    out = out + deg_z(t - prev);
    prev = t;
  }
  const int rest = p.n - prev;
  out = out + rest * (HalfInt::whole(rest - 1) + p.e());
  return out;
}

bool degree_identity_check(const Params& p, int s) {
  return deg_lambda_subspace(s, p) + deg_chambers_through(s, p) == deg_lambda_chambers(p);
}

}  // namespace polar
