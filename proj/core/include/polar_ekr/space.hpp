#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polar_ekr/field.hpp"
#include "polar_ekr/linalg.hpp"

namespace polar {

/// The six families of finite classical polar spaces.
///
/// Dictionary between (n, e, q) and the model used here:
///   hyperbolic      Q+(2n-1, q)   e = 0     d = 2n
///   hermitian_odd   H(2n-1, q)    e = 1/2   d = 2n     q a square
///   symplectic      W(2n-1, q)    e = 1     d = 2n
///   parabolic       Q(2n, q)      e = 1     d = 2n + 1
///   hermitian_even  H(2n, q)      e = 3/2   d = 2n + 1 q a square
///   elliptic        Q-(2n+1, q)   e = 2     d = 2n + 2
enum class PolarKind { hyperbolic, hermitian_odd, symplectic, parabolic, hermitian_even, elliptic };

std::string_view to_string(PolarKind kind);
std::optional<PolarKind> parse_kind(std::string_view name);
/// 2e for the kind.
int twice_type(PolarKind kind);
int ambient_dimension(PolarKind kind, int rank);
bool is_orthogonal(PolarKind kind);
bool is_hermitian(PolarKind kind);

enum class FormType { alternating, quadratic, hermitian };

/// Reflexive form data on GF(q)^dim.
///
/// `gram` holds the polar form B(x, y) = sum x_i G_ij conj(y_j), with conj the
/// identity unless the form is hermitian. For quadratic forms `quad` holds the
/// coefficients c_ij (i <= j) of Q(x) = sum c_ij x_i x_j and G = C + C^T.
struct Form {
  FormType type = FormType::alternating;
  int dim = 0;
  std::vector<Elem> gram;
  std::vector<Elem> quad;

  Elem g(int i, int j) const { return gram[static_cast<std::size_t>(i) * dim + j]; }

  /// Polar form B(x, y).
  Elem pair(const Field& f, std::span<const Elem> x, std::span<const Elem> y) const;
  /// Q(x) for quadratic forms, B(x, x) for hermitian forms, 0 for alternating ones.
  Elem self(const Field& f, std::span<const Elem> x) const;
  /// Row i of the result is the linear functional y -> B(y, rows_i); its
  /// kernel is the perp of the row space.
  GfMatrix perp_equations(const Field& f, const Subspace& s) const;
};

/// A non-degenerate finite classical polar space PS(n, e, q) together with
/// its canonically ordered point set.
class PolarSpace {
public:
  /// Canonical Witt-decomposed model. Throws std::invalid_argument when q is
  /// not a supported prime power, is not a square for hermitian kinds, or n < 1.
  static PolarSpace build(PolarKind kind, int rank, int q);

  /// Space defined by an explicit form (used for quotients). The point count
  /// is checked against the closed form for (rank, kind).
  static PolarSpace from_form(PolarKind kind, int rank, Field field, Form form);

  PolarKind kind() const { return kind_; }
  int rank() const { return rank_; }
  int twice_e() const { return twice_type(kind_); }
  int q() const { return field_.q(); }
  int dim() const { return form_.dim; }
  const Field& field() const { return field_; }
  const Form& form() const { return form_; }
  const std::vector<Subspace>& points() const { return points_; }

  /// Short label such as "W(5,2)".
  std::string name() const;

  bool is_singular_vector(std::span<const Elem> x) const;

private:
  PolarSpace(PolarKind kind, int rank, Field field, Form form);
  void enumerate_points();

  PolarKind kind_;
  int rank_;
  Field field_;
  Form form_;
  std::vector<Subspace> points_;
};

/// All totally singular s-spaces, sorted canonically with ids set to their positions.
std::vector<Subspace> enumerate_subspaces(const PolarSpace& space, int s);

/// Extends the (s-1)-spaces in `lower` by singular points; the result is
/// sorted with ids assigned.
std::vector<Subspace> extend_subspaces(const PolarSpace& space, const std::vector<Subspace>& lower);

/// {x : B(x, s) = 0 for all s in S}; S need not be singular.
Subspace perp(const PolarSpace& space, const Subspace& s);

/// Every vector isotropic (alternating, hermitian) or singular (quadratic).
bool is_totally_singular(const PolarSpace& space, const Subspace& s);

/// Rank of the pairing matrix B(a_i, b_j).
int pairing_rank(const PolarSpace& space, const Subspace& a, const Subspace& b);

/// a ∩ b^⊥ = 0, decided by the pairing rank.
inline bool meets_perp_trivially(const PolarSpace& space, const Subspace& a, const Subspace& b) {
  return pairing_rank(space, a, b) == a.rank;
}

/// Same-rank subspaces with a^⊥ ∩ b = 0.
bool subspaces_opposite(const PolarSpace& space, const Subspace& a, const Subspace& b);

/// The quotient M^⊥/M with coordinates taken in a fixed complement W of M
/// inside M^⊥.
struct Quotient {
  PolarSpace space;
  Subspace radical;    // M
  GfMatrix complement; // rows spanning W, in ambient coordinates

  /// T with M ⊆ T ⊆ M^⊥  ->  T/M in quotient coordinates.
  Subspace down(const PolarSpace& parent, const Subspace& t) const;
  /// U in quotient coordinates -> <M, U> in the ambient space.
  Subspace up(const PolarSpace& parent, const Subspace& u) const;

  GfMatrix basis;  // rows of M followed by rows of W

  // coordinates: v = sum_j v[pivots[j]] * transform.row(j) * basis
  std::vector<int> pivots;
  GfMatrix transform;
};

/// Throws std::invalid_argument unless M is totally singular with 1 <= rank < n.
Quotient quotient_space(const PolarSpace& space, const Subspace& m);

struct HyperplaneSection {
  std::uint64_t points = 0;  // singular points of the space inside H
  int radical_dim = 0;       // singular radical of the restricted form
  bool degenerate = false;
  std::optional<PolarKind> kind;  // set for non-degenerate sections
  int rank = 0;                   // rank of the section (non-degenerate) or of its base (degenerate)
  std::string tag;                // e.g. "Q+(5,2)" or "cone(P,W(3,2))"
};

/// Throws std::invalid_argument if H is not a hyperplane.
HyperplaneSection hyperplane_section(const PolarSpace& space, const Subspace& h);

/// Hyperplane with the given normal vector: {x : sum a_i x_i = 0}.
Subspace hyperplane_from_functional(const Field& f, std::span<const Elem> a);

/// One row per subspace: id,rank,e_0,...,e_{rank*dim-1}.
void write_subspaces_csv(std::ostream& out, const std::vector<Subspace>& subspaces);

}  // namespace polar
