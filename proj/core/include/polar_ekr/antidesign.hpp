#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "polar_ekr/flag.hpp"
#include "polar_ekr/graph.hpp"

namespace polar {

/// Exact rational vector on the flags of one type (values / denominator),
/// indexed in canonical flag order, with the construction that produced it.
struct Antidesign {
  FlagType type;
  std::vector<std::int64_t> values;
  std::int64_t denominator = 1;
  std::string constructor;  // "chi", "v_subspace", "v_mspace", "lift(...)", "sum"
  int base_dim = 0;         // dimension of the base subspace; 0 for a flag
  std::int64_t base_id = -1;

  std::size_t size() const { return values.size(); }
  mpq_class at(std::size_t i) const { return mpq_class(values[i], denominator); }
  /// 1^T v
  mpq_class total() const;
  /// Same rational vector (representations may differ).
  bool same_values(const Antidesign& other) const;
};

/// The smallest eigenvalue lambda_J of the opposition graph: the closed form
/// in the regime e >= 1 or n even, otherwise the certified spectrum. When a
/// certified spectrum is attached it must agree with the closed form.
std::int64_t min_eigenvalue(const Geometry& g, const OppositionGraph& graph);

/// Row F of A_J - lambda I: -lambda at F, 1 at flags opposite F, else 0.
Antidesign chi(const OppositionGraph& graph, FlagIndex f, std::int64_t lambda);

/// On chambers: -lambda_s if C_s = S, 1 if S meets C_s^⊥ trivially, else 0.
Antidesign v_subspace(const Geometry& g, int s, SubspaceId id);

/// On s-spaces T (m < s): -lambda_s if M ⊆ T, q^{deg Phi_m^s} if M ∩ T^⊥ = 0, else 0.
Antidesign v_mspace(const Geometry& g, int m, SubspaceId id, int s);

/// M v: the value of v at the type-J flag inside each chamber.
Antidesign lift(const Geometry& g, const Antidesign& v);
Antidesign lift(std::span<const FlagIndex> projection, const Antidesign& v);

/// sum of chi_F over the listed flags.
Antidesign chi_sum(const OppositionGraph& graph, std::span<const FlagIndex> flags, std::int64_t lambda);

/// v^T u == 0 for every basis vector u.
bool orthogonal(const Antidesign& v, const IntBasis& basis);

/// q^{deg(z_s z_{n-s} Phi_s^n)} v_S == sum of chi_C over chambers with C_s = S.
bool subspace_scaled_sum_holds(const Geometry& g, const OppositionGraph& chambers, int s, SubspaceId id);
/// v_M == sum of chi_T over s-spaces T containing M.
bool mspace_sum_holds(const Geometry& g, const OppositionGraph& sgraph, int m, SubspaceId id, int s);

struct Pairing {
  mpq_class actual;     // 1_F^T v
  mpq_class predicted;  // |F| (1^T v) / |flags|
  bool equal = false;
};
/// Member indices must be distinct and in range.
Pairing pairing(const Antidesign& v, std::span<const FlagIndex> members);

/// Rank of the span of all chi_F rows, i.e. of A - lambda I. Since A is
/// symmetric, a vector lies in this span exactly when it is orthogonal to the
/// lambda-eigenspace, so this complements the orthogonality check.
std::size_t chi_row_space_rank(const OppositionGraph& graph, std::int64_t lambda);

}  // namespace polar
