#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polar_ekr/count.hpp"
#include "polar_ekr/flag.hpp"
#include "polar_ekr/flag_type.hpp"

namespace polar {

struct GraphLimits {
  std::size_t max_vertices = 4'000'000;
  /// Total adjacency entries (twice the edge count).
  std::size_t max_adjacency = 250'000'000;
};

struct Eigenvalue {
  std::int64_t value = 0;
  std::size_t multiplicity = 0;
  friend bool operator==(const Eigenvalue&, const Eigenvalue&) = default;
};
/// Ascending by value.
using Spectrum = std::vector<Eigenvalue>;

/// Metadata identifying the space a graph was built on; empty for ad hoc graphs.
struct GraphInfo {
  std::string space;  // e.g. "W(5,2)"
  std::string kind;
  int n = 0;
  int twice_e = 0;
  int q = 0;
  std::string type;  // flag type, e.g. "1,2,3"
  friend bool operator==(const GraphInfo&, const GraphInfo&) = default;
};

/// Opposition graph on the flags of one type. Vertex i is the flag with index
/// i in the canonical FlagFamily order. Adjacency is a symmetric CSR with
/// sorted neighbour lists; the graph is immutable once built.
class OppositionGraph {
public:
  OppositionGraph() = default;

  /// Throws std::length_error when the vertex or adjacency count exceeds `limits`.
  static OppositionGraph build(const Geometry& g, const FlagType& type, int threads = 1, GraphLimits limits = {});
  /// Ad hoc graph from an undirected edge list (loops and duplicates rejected).
  static OppositionGraph from_edges(std::size_t vertices, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                                    GraphInfo info = {});

  const GraphInfo& info() const { return info_; }
  std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return adjacency_.size() / 2; }
  std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(std::uint32_t v) const { return offsets_[v + 1] - offsets_[v]; }
  bool adjacent(std::uint32_t u, std::uint32_t v) const;
  /// Common valency, or nullopt if the graph is not regular.
  std::optional<std::size_t> regular_degree() const;
  bool connected() const;

  /// Certified spectrum attached by attach_spectrum (or loaded from JSON).
  const std::optional<Spectrum>& spectrum() const { return spectrum_; }
  void attach_spectrum(Spectrum s);

  /// Edges u < v in lexicographic order.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;

  friend bool operator==(const OppositionGraph&, const OppositionGraph&) = default;

private:
  GraphInfo info_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> adjacency_;
  std::optional<Spectrum> spectrum_;
};

/// DIMACS "p edge N M" with 1-based "e u v" lines; the complement graph when requested.
void write_dimacs(std::ostream& out, const OppositionGraph& graph, bool complement = false);
/// Reads the edge format written by write_dimacs.
OppositionGraph read_dimacs(std::istream& in);
/// {schema, space, kind, n, twice_e, q, J, n_vertices, degree, edges[, spectrum]}.
void write_graph_json(std::ostream& out, const OppositionGraph& graph);
OppositionGraph read_graph_json(std::istream& in);

class CertificationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SpectrumOptions {
  std::size_t dense_limit = 3000;
  double tolerance = 1e-6;
  int max_primes = 6;
};

/// Integer vectors spanning the rational kernel of A - lambda I, one per
/// free column of the echelon form, each verified exactly.
struct IntBasis {
  std::int64_t eigenvalue = 0;
  std::size_t dimension = 0;  // vertex count
  std::vector<std::vector<std::int64_t>> vectors;
};

/// Every eigenvalue certified integral: numeric candidates, then for each
/// candidate an exact kernel basis of A - lambda I whose size equals the
/// nullity modulo a prime (an upper bound for the rational nullity). The
/// multiplicities must add up to the vertex count. Throws CertificationError
/// when any step fails, std::length_error above the dense limit.
Spectrum certified_spectrum(const OppositionGraph& graph, const SpectrumOptions& options = {});

/// Exact basis of ker(A - lambda I). Throws std::invalid_argument if lambda
/// is not an eigenvalue.
IntBasis eigenspace_basis(const OppositionGraph& graph, std::int64_t lambda, const SpectrumOptions& options = {});

/// (A - lambda I) x == 0, evaluated exactly.
bool is_eigenvector(const OppositionGraph& graph, std::int64_t lambda, std::span<const std::int64_t> x);

/// For every chamber, the index of the type-J flag it contains (the incidence matrix M).
std::vector<FlagIndex> chamber_projection(const Geometry& g, const FlagType& type);

struct QuotientReport {
  FlagType type;
  HalfInt ell;
  mpz_class factor;  // q^ell
  bool holds = false;
  std::size_t mismatches = 0;
  /// Lifted eigenvectors of distinct eigenvalues were orthogonal on the sample (unset if not run).
  std::optional<bool> lifted_orthogonal;
};

/// Checks A_[n] M = M q^l A_J entrywise, one chamber row at a time.
QuotientReport quotient_relation_check(const Geometry& g, const OppositionGraph& chambers,
                                       const OppositionGraph& flags, bool sample_eigenvectors = false);

}  // namespace polar
