#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "polar_ekr/flag_type.hpp"
#include "polar_ekr/space.hpp"

namespace polar {

using SubspaceId = std::uint32_t;
using FlagIndex = std::uint32_t;

/// All totally singular subspaces of a polar space together with incidence
/// tables (faces, cofaces) and per-dimension opposition relations.
///
/// Opposition tables are built lazily, once per dimension, and are safe to
/// request from several threads.
class Geometry {
public:
  explicit Geometry(PolarSpace space);
  static Geometry build(PolarKind kind, int rank, int q) { return Geometry(PolarSpace::build(kind, rank, q)); }

  Geometry(const Geometry&) = delete;
  Geometry& operator=(const Geometry&) = delete;
  Geometry(Geometry&&) noexcept = default;

  const PolarSpace& space() const { return space_; }
  int rank() const { return space_.rank(); }
  const std::vector<Subspace>& subspaces(int s) const { return levels_.at(check(s)).items; }
  std::size_t count(int s) const { return subspaces(s).size(); }
  const Subspace& subspace(int s, SubspaceId id) const { return subspaces(s).at(id); }

  /// Id of an s-space (canonical form required); nullopt if it is not a totally singular subspace.
  std::optional<SubspaceId> find(const Subspace& s) const;
  SubspaceId id_of(const Subspace& s) const;

  /// Sorted ids of the t-spaces inside the s-space `id` (t < s).
  const std::vector<SubspaceId>& faces(int s, SubspaceId id, int t) const;
  /// Sorted ids of the s-spaces containing the t-space `id` (t < s).
  const std::vector<SubspaceId>& cofaces(int t, SubspaceId id, int s) const;
  /// t-space `small` inside s-space `big`; t == s means equality.
  bool incident(int t, SubspaceId small, int s, SubspaceId big) const;

  /// s-spaces a and b are opposite: a^⊥ ∩ b = 0.
  bool opposite(int s, SubspaceId a, SubspaceId b) const;
  /// Sorted ids of the s-spaces opposite `id`.
  const std::vector<SubspaceId>& opposites(int s, SubspaceId id) const;

  /// a ∩ b^⊥ = 0 for an m-space a and an s-space b (m <= s).
  bool meets_perp_trivially(int m, SubspaceId a, int s, SubspaceId b) const;

private:
  struct Level {
    std::vector<Subspace> items;
    std::unordered_map<std::string, SubspaceId> index;
    // faces[t][id], cofaces[s][id]; indexed by the other dimension
    std::vector<std::vector<std::vector<SubspaceId>>> faces;
    std::vector<std::vector<std::vector<SubspaceId>>> cofaces;
    // perp-equation rows per subspace (rank x dim), used for pairing matrices
    std::vector<Elem> perp_eq;
    std::unique_ptr<std::once_flag> opp_once = std::make_unique<std::once_flag>();
    std::vector<std::uint64_t> opp_bits;
    std::vector<std::vector<SubspaceId>> opp_lists;
  };

  int check(int s) const;
  void build_opposition(int s) const;
  int pairing_rank_ids(int m, SubspaceId a, int s, SubspaceId b) const;

  PolarSpace space_;
  mutable std::vector<Level> levels_;  // index s = 1..n; slot 0 unused
};

/// Flags of one type in canonical order: lexicographic on part ids with the
/// largest dimension most significant, so flags sharing a top part are
/// contiguous and chambers are ordered by generator id first.
class FlagFamily {
public:
  FlagFamily(const Geometry& geometry, FlagType type);

  const FlagType& type() const { return type_; }
  std::size_t size() const { return parts_.size() / width(); }
  int width() const { return type_.size(); }

  /// Part ids in ascending dimension order.
  std::span<const SubspaceId> flag(FlagIndex i) const {
    return {parts_.data() + static_cast<std::size_t>(i) * width(), static_cast<std::size_t>(width())};
  }
  SubspaceId part(FlagIndex i, int s) const;

  std::optional<FlagIndex> index_of(std::span<const SubspaceId> parts) const;
  /// Half-open index range of flags whose top part is `top`.
  std::pair<FlagIndex, FlagIndex> top_range(SubspaceId top) const;

private:
  FlagType type_;
  std::vector<SubspaceId> parts_;
  std::vector<FlagIndex> top_begin_;  // size count(top)+1
};

/// Parts in ascending dimension order; a flag of type J is valid if the parts are nested.
bool is_flag(const Geometry& g, const FlagType& type, std::span<const SubspaceId> parts);

/// F_i^⊥ ∩ F'_i = 0 for every i in the type.
bool is_opposite(const Geometry& g, const FlagType& type, std::span<const SubspaceId> a,
                 std::span<const SubspaceId> b);

/// All chambers containing the flag (parts of type `type`), as chamber part
/// vectors in canonical order.
std::vector<std::vector<SubspaceId>> chambers_through(const Geometry& g, const FlagType& type,
                                                      std::span<const SubspaceId> parts);

/// Sub-flag of type `sub` (a subset of `type`) of the given flag.
std::vector<SubspaceId> restrict_flag(const FlagType& type, std::span<const SubspaceId> parts, const FlagType& sub);

}  // namespace polar
