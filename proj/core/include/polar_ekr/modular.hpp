#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace polar::modp {

/// The `count` largest primes below 2^26, in decreasing order. Products of
/// two residues stay below 2^52, so elimination runs exactly in doubles.
std::vector<std::uint32_t> elimination_primes(int count);

/// Row echelon data of a dense integer matrix reduced modulo a prime, with
/// the reduced row echelon entries of the free columns.
struct Echelon {
  std::uint32_t prime = 0;
  int rows = 0;
  int cols = 0;
  std::vector<int> pivots;  // pivot column of each nonzero row
  std::vector<int> free;    // non-pivot columns, increasing
  /// rank x free.size(), row-major: entry (i, j) of the RREF in column free[j].
  std::vector<std::uint32_t> reduced;

  int rank() const { return static_cast<int>(pivots.size()); }
  int nullity() const { return cols - rank(); }
  std::uint32_t at(int i, int j) const { return reduced[static_cast<std::size_t>(i) * free.size() + j]; }
};

/// Gaussian elimination of `a` (rows x cols, row-major) modulo `prime` < 2^26.
Echelon echelon_mod_p(std::span<const std::int64_t> a, int rows, int cols, std::uint32_t prime);

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m);

/// n/d == a (mod m) with |n|, d <= sqrt(m/2); nullopt when no such fraction exists.
std::optional<std::pair<std::int64_t, std::int64_t>> rational_reconstruct(std::int64_t a, std::int64_t m);

}  // namespace polar::modp
