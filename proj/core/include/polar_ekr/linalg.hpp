#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "polar_ekr/field.hpp"

namespace polar {

/// Dense row-major matrix over a finite field.
struct GfMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Elem> data;

  GfMatrix() = default;
  GfMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}

  Elem& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  Elem at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
  std::span<Elem> row(int r) { return {data.data() + static_cast<std::size_t>(r) * cols, static_cast<std::size_t>(cols)}; }
  std::span<const Elem> row(int r) const {
    return {data.data() + static_cast<std::size_t>(r) * cols, static_cast<std::size_t>(cols)};
  }
};

/// In-place reduced row echelon form; zero rows are dropped. Returns pivot columns.
std::vector<int> rref_in_place(const Field& f, GfMatrix& m);

int gf_rank(const Field& f, GfMatrix m);

/// Basis (as rows) of {x : m x^T = 0}, in reduced row echelon form.
GfMatrix right_nullspace(const Field& f, const GfMatrix& m);

/// A vector subspace of GF(q)^dim, stored by its canonical RREF basis.
///
/// Equality ignores `id`, which is only meaningful for subspaces handed out
/// by an enumeration (position in the canonical order of that dimension).
struct Subspace {
  static constexpr std::uint32_t kNoId = std::numeric_limits<std::uint32_t>::max();

  int rank = 0;
  int dim = 0;
  std::vector<Elem> rows;
  std::uint32_t id = kNoId;

  std::span<const Elem> row(int r) const {
    return {rows.data() + static_cast<std::size_t>(r) * dim, static_cast<std::size_t>(dim)};
  }
  GfMatrix matrix() const;

  /// Flattened RREF entries as a byte string; identical subspaces give identical keys.
  std::string key() const { return {rows.begin(), rows.end()}; }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.rank == b.rank && a.dim == b.dim && a.rows == b.rows;
  }
  /// Canonical order: rank, then lexicographic on the flattened RREF.
  friend bool operator<(const Subspace& a, const Subspace& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.rows < b.rows;
  }
};

/// Row space of `spanning` (any number of rows, zero rows allowed).
Subspace make_subspace(const Field& f, GfMatrix spanning);
Subspace make_subspace(const Field& f, int dim, std::span<const Elem> rows);
Subspace zero_subspace(int dim);
Subspace full_subspace(int dim);

Subspace span(const Field& f, const Subspace& a, const Subspace& b);
Subspace meet(const Field& f, const Subspace& a, const Subspace& b);
bool contains(const Field& f, const Subspace& big, const Subspace& small);
bool contains_vector(const Field& f, const Subspace& s, std::span<const Elem> v);
inline bool is_skew(const Field& f, const Subspace& a, const Subspace& b) { return meet(f, a, b).rank == 0; }

/// All subspaces of rank `s` inside `t`, each in canonical form (unsorted).
std::vector<Subspace> subspaces_of(const Field& f, const Subspace& t, int s);

/// Scales `v` so that its first nonzero entry is one. Returns false for v = 0.
bool normalize(const Field& f, std::span<Elem> v);

}  // namespace polar
