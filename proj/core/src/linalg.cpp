#include "polar_ekr/linalg.hpp"

#include <stdexcept>

namespace polar {

std::vector<int> rref_in_place(const Field& f, GfMatrix& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = r;
    while (p < m.rows && m.at(p, c) == 0) ++p;
    if (p == m.rows) continue;
    if (p != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    const Elem inv = f.inv(m.at(r, c));
    if (inv != 1)
      for (int j = c; j < m.cols; ++j) m.at(r, j) = f.mul(m.at(r, j), inv);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r) continue;
      const Elem factor = m.at(i, c);
      if (factor == 0) continue;
      const Elem nf = f.neg(factor);
      for (int j = c; j < m.cols; ++j) m.at(i, j) = f.add(m.at(i, j), f.mul(nf, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  m.rows = r;
  m.data.resize(static_cast<std::size_t>(r) * m.cols);
  return pivots;
}

int gf_rank(const Field& f, GfMatrix m) {
  return static_cast<int>(rref_in_place(f, m).size());
}

GfMatrix right_nullspace(const Field& f, const GfMatrix& m) {
  GfMatrix r = m;
  const auto pivots = rref_in_place(f, r);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  GfMatrix out(m.cols - static_cast<int>(pivots.size()), m.cols);
  int k = 0;
  for (int free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    out.at(k, free) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      out.at(k, pivots[i]) = f.neg(r.at(static_cast<int>(i), free));
    ++k;
  }
  rref_in_place(f, out);
  return out;
}

GfMatrix Subspace::matrix() const {
  GfMatrix m(rank, dim);
  m.data = rows;
  return m;
}

Subspace make_subspace(const Field& f, GfMatrix spanning) {
  const int dim = spanning.cols;
  rref_in_place(f, spanning);
  Subspace s;
  s.rank = spanning.rows;
  s.dim = dim;
  s.rows = std::move(spanning.data);
  return s;
}

Subspace make_subspace(const Field& f, int dim, std::span<const Elem> rows) {
  if (dim <= 0 || rows.size() % static_cast<std::size_t>(dim) != 0)
    throw std::invalid_argument("make_subspace: row data does not match the ambient dimension");
  GfMatrix m(static_cast<int>(rows.size() / dim), dim);
  m.data.assign(rows.begin(), rows.end());
  return make_subspace(f, std::move(m));
}

Subspace zero_subspace(int dim) {
  Subspace s;
  s.dim = dim;
  return s;
}

Subspace full_subspace(int dim) {
  Subspace s;
  s.dim = dim;
  s.rank = dim;
  s.rows.assign(static_cast<std::size_t>(dim) * dim, 0);
  for (int i = 0; i < dim; ++i) s.rows[static_cast<std::size_t>(i) * dim + i] = 1;
  return s;
}

Subspace span(const Field& f, const Subspace& a, const Subspace& b) {
  if (a.dim != b.dim) throw std::invalid_argument("span: dimension mismatch");
  GfMatrix m(a.rank + b.rank, a.dim);
  std::copy(a.rows.begin(), a.rows.end(), m.data.begin());
  std::copy(b.rows.begin(), b.rows.end(), m.data.begin() + static_cast<std::ptrdiff_t>(a.rows.size()));
  return make_subspace(f, std::move(m));
}

Subspace meet(const Field& f, const Subspace& a, const Subspace& b) {
  if (a.dim != b.dim) throw std::invalid_argument("meet: dimension mismatch");
  // a ∩ b = annihilator of (ann(a) + ann(b)) under the standard dot product
  const GfMatrix ann_a = right_nullspace(f, a.matrix());
  const GfMatrix ann_b = right_nullspace(f, b.matrix());
  GfMatrix both(ann_a.rows + ann_b.rows, a.dim);
  std::copy(ann_a.data.begin(), ann_a.data.end(), both.data.begin());
  std::copy(ann_b.data.begin(), ann_b.data.end(), both.data.begin() + static_cast<std::ptrdiff_t>(ann_a.data.size()));
  if (both.rows == 0) return full_subspace(a.dim);
  return make_subspace(f, right_nullspace(f, both));
}

bool contains_vector(const Field& f, const Subspace& s, std::span<const Elem> v) {
  // reduce v against the RREF rows; v is in s iff the remainder vanishes
  std::vector<Elem> r(v.begin(), v.end());
  for (int i = 0; i < s.rank; ++i) {
    const auto row = s.row(i);
    int pivot = 0;
    while (row[pivot] == 0) ++pivot;
    const Elem c = r[pivot];
    if (c == 0) continue;
    const Elem nc = f.neg(c);
    for (int j = pivot; j < s.dim; ++j) r[j] = f.add(r[j], f.mul(nc, row[j]));
  }
  for (Elem x : r)
    if (x != 0) return false;
  return true;
}

bool contains(const Field& f, const Subspace& big, const Subspace& small) {
  if (big.dim != small.dim) throw std::invalid_argument("contains: dimension mismatch");
  if (small.rank > big.rank) return false;
  for (int i = 0; i < small.rank; ++i)
    if (!contains_vector(f, big, small.row(i))) return false;
  return true;
}

namespace {

// Enumerates every s x t matrix in reduced row echelon form of full rank s.
template <typename Fn>
void for_each_rref(const Field& f, int s, int t, Fn&& fn) {
  std::vector<int> pivots(s);
  for (int i = 0; i < s; ++i) pivots[i] = i;
  GfMatrix m(s, t);
  while (true) {
    // free positions: row i, column c > pivots[i], c not a pivot column
    std::vector<bool> is_pivot(t, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::pair<int, int>> free;
    for (int i = 0; i < s; ++i)
      for (int c = pivots[i] + 1; c < t; ++c)
        if (!is_pivot[c]) free.emplace_back(i, c);
    std::fill(m.data.begin(), m.data.end(), Elem{0});
    for (int i = 0; i < s; ++i) m.at(i, pivots[i]) = 1;
    std::vector<int> digits(free.size(), 0);
    while (true) {
      for (std::size_t k = 0; k < free.size(); ++k)
        m.at(free[k].first, free[k].second) = static_cast<Elem>(digits[k]);
      fn(m);
      std::size_t k = 0;
      while (k < digits.size() && ++digits[k] == f.q()) digits[k++] = 0;
      if (k == digits.size()) break;
    }
    // next pivot combination
    int i = s - 1;
    while (i >= 0 && pivots[i] == t - s + i) --i;
    if (i < 0) break;
    ++pivots[i];
    for (int j = i + 1; j < s; ++j) pivots[j] = pivots[j - 1] + 1;
  }
}

}  // namespace

std::vector<Subspace> subspaces_of(const Field& f, const Subspace& t, int s) {
  std::vector<Subspace> out;
  if (s < 0 || s > t.rank) return out;
  if (s == 0) {
    out.push_back(zero_subspace(t.dim));
    return out;
  }
  for_each_rref(f, s, t.rank, [&](const GfMatrix& coeff) {
    GfMatrix prod(s, t.dim);
    for (int i = 0; i < s; ++i)
      for (int k = 0; k < t.rank; ++k) {
        const Elem c = coeff.at(i, k);
        if (c == 0) continue;
        const auto trow = t.row(k);
        for (int j = 0; j < t.dim; ++j) prod.at(i, j) = f.add(prod.at(i, j), f.mul(c, trow[j]));
      }
    out.push_back(make_subspace(f, std::move(prod)));
  });
  return out;
}

bool normalize(const Field& f, std::span<Elem> v) {
  std::size_t lead = 0;
  while (lead < v.size() && v[lead] == 0) ++lead;
  if (lead == v.size()) return false;
  const Elem inv = f.inv(v[lead]);
  for (std::size_t j = lead; j < v.size(); ++j) v[j] = f.mul(v[j], inv);
  return true;
}

}  // namespace polar
