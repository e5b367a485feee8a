#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polar_ekr/flag.hpp"
#include "polar_ekr/graph.hpp"

namespace polar {

/// A family of flags of one type, members sorted by canonical index.
struct EKRSet {
  FlagType type;
  std::vector<FlagIndex> members;
  std::string label;

  std::size_t size() const { return members.size(); }
  bool contains(FlagIndex f) const;
};

enum class ExampleFamily { a, b, c, d };
std::optional<ExampleFamily> parse_family(std::string_view name);

/// The standard examples:
///   a: the points of a generator (base = generator id),
///   b: the generators through a point (base = point id),
///   c: one class of generators of a hyperbolic space of odd rank, those
///      meeting the base generator in a space of dimension = n (mod 2),
///   d: in a parabolic space, the generators of a hyperbolic hyperplane
///      section in the class of the base-th section generator.
/// Throws std::invalid_argument when the family does not apply to the space.
EKRSet build_example(const Geometry& g, ExampleFamily family, std::uint32_t base = 0);

/// For family d: the first hyperplane (by canonical functional order) whose
/// section is hyperbolic, and the generators inside it.
struct HyperbolicSection {
  Subspace hyperplane;
  std::vector<SubspaceId> generators;
};
HyperbolicSection hyperbolic_section(const Geometry& g);

/// Generators split by the parity of dim(pi ∩ ref): first those with
/// dim = n (mod 2), then the others.
std::pair<std::vector<SubspaceId>, std::vector<SubspaceId>> parity_classes(const Geometry& g,
                                                                           std::span<const SubspaceId> generators,
                                                                           SubspaceId ref);

/// All flags of type `target` (containing the type of f) whose restriction lies in f.
EKRSet blow_up(const Geometry& g, const EKRSet& f, const FlagType& target);

struct EKRCheck {
  bool ok = true;
  std::optional<std::pair<FlagIndex, FlagIndex>> violation;  // first opposite pair found
};
/// Pairwise non-opposition via the adjacency lists of the graph.
EKRCheck verify_ekr(const OppositionGraph& graph, std::span<const FlagIndex> members);
/// Same check without a graph, by direct opposition tests.
EKRCheck verify_ekr(const Geometry& g, const EKRSet& f);

struct Sharpness {
  std::size_t size = 0;
  mpz_class bound;
  bool sharp = false;
  /// N A 1_F - N lambda 1_F - |F| (d - lambda) 1 == 0: 1_F lies in <1> + E_lambda.
  bool certificate = false;
};
Sharpness ratio_sharpness(const Geometry& g, const OppositionGraph& graph, const EKRSet& f);

struct XYZ {
  std::size_t x = 0, y = 0, z = 0;
  bool heavy = false;      // x equals the full extension count
  bool identity = false;   // the ratio-sharp identity for Y
};
/// Chambers C of f: X counts C_s = S, Y counts S ∩ C_s^⊥ = 0, Z the rest.
/// Identity: Y = -lambda_s (z_s z_{n-s} Phi_s^n - X).
XYZ xyz_chambers(const Geometry& g, const EKRSet& f, int s, SubspaceId probe);
/// s-spaces T of f, probe an m-space M (m < s): X counts M ⊆ T, Y counts
/// M ∩ T^⊥ = 0. Identity: Y = -lambda_s q^{-deg Phi_m^s} (Phi_m^s - X).
XYZ xyz_subspaces(const Geometry& g, const EKRSet& f, int m, SubspaceId probe);

/// Weight of every s-space: the number of members whose s-part is it.
std::vector<std::size_t> weights(const Geometry& g, const EKRSet& f, int s);
/// s-spaces whose weight equals the number of type-f flags through them.
std::vector<SubspaceId> heavy_subspaces(const Geometry& g, const EKRSet& f, int s);

/// {schema, space, kind, n, twice_e, q, J, label, member_ids}.
void write_ekr_json(std::ostream& out, const Geometry& g, const EKRSet& f);
/// Checks that the file describes the same space.
EKRSet read_ekr_json(std::istream& in, const Geometry& g);

}  // namespace polar
