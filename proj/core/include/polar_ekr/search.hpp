#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polar_ekr/ekr.hpp"
#include "polar_ekr/graph.hpp"

namespace polar {

struct SearchOptions {
  /// Wall-clock budget; <= 0 means unlimited.
  double budget_seconds = 1800.0;
  /// Branch nodes; 0 means unlimited. A node limit makes timeouts deterministic.
  std::uint64_t node_limit = 0;
  /// Global upper bound (the ratio bound), used only at the root.
  std::optional<std::size_t> root_bound;
  /// Independent sets used as initial lower bounds; each is verified first.
  std::vector<std::vector<std::uint32_t>> seeds;
  /// Collect every maximum independent set, up to this many (0 = off).
  std::size_t collect_limit = 0;
};

struct SearchResult {
  std::size_t alpha = 0;        // size of the best set found (the exact value when proved)
  std::size_t upper_bound = 0;  // certified upper bound
  std::vector<std::uint32_t> witness;
  std::string status;  // "proved" or "bounds-only"
  std::string method;  // "squeeze" or "branch-and-bound"
  std::uint64_t nodes = 0;
  double seconds = 0.0;
  /// With collect_limit: all maximum sets found (complete when proved and below the limit).
  std::vector<std::vector<std::uint32_t>> all_maximum;
  bool proved() const { return status == "proved"; }
};

/// Maximum independent set by branch and bound with greedy colouring bounds
/// (cliques of the graph cover the candidates). Vertices are ordered by
/// descending degree, ties by index. If a seed reaches the root bound the
/// search stops at once (squeeze). A timeout yields "bounds-only" with a
/// certified upper bound.
SearchResult max_independent_set(const OppositionGraph& graph, const SearchOptions& options = {});

struct StructureReport {
  bool is_blow_up = false;
  int s = 0;
  std::vector<SubspaceId> base;  // the heavy s-spaces that blow up to the set
  bool extremal_dimension = false;  // s in {1, n}
};

/// Looks for the smallest s whose heavy s-spaces blow up exactly to f.
/// Throws std::invalid_argument if f is not a set of chambers of size alpha.
StructureReport structure_check(const Geometry& g, const EKRSet& f, std::size_t alpha);

}  // namespace polar
