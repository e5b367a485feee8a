#include "polar_ekr/space.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

#include "polar_ekr/count.hpp"

namespace polar {

std::string_view to_string(PolarKind kind) {
  switch (kind) {
    case PolarKind::hyperbolic: return "hyperbolic";
    case PolarKind::hermitian_odd: return "hermitian_odd";
    case PolarKind::symplectic: return "symplectic";
    case PolarKind::parabolic: return "parabolic";
    case PolarKind::hermitian_even: return "hermitian_even";
    case PolarKind::elliptic: return "elliptic";
  }
  return "?";
}

std::optional<PolarKind> parse_kind(std::string_view name) {
  for (PolarKind k : {PolarKind::hyperbolic, PolarKind::hermitian_odd, PolarKind::symplectic, PolarKind::parabolic,
                      PolarKind::hermitian_even, PolarKind::elliptic})
    if (name == to_string(k)) return k;
  return std::nullopt;
}

int twice_type(PolarKind kind) {
  switch (kind) {
    case PolarKind::hyperbolic: return 0;
    case PolarKind::hermitian_odd: return 1;
    case PolarKind::symplectic: return 2;
    case PolarKind::parabolic: return 2;
    case PolarKind::hermitian_even: return 3;
    case PolarKind::elliptic: return 4;
  }
  return -1;
}

int ambient_dimension(PolarKind kind, int rank) {
  switch (kind) {
    case PolarKind::hyperbolic:
    case PolarKind::hermitian_odd:
    case PolarKind::symplectic: return 2 * rank;
    case PolarKind::parabolic:
    case PolarKind::hermitian_even: return 2 * rank + 1;
    case PolarKind::elliptic: return 2 * rank + 2;
  }
  return 0;
}

bool is_orthogonal(PolarKind kind) {
  return kind == PolarKind::hyperbolic || kind == PolarKind::parabolic || kind == PolarKind::elliptic;
}

bool is_hermitian(PolarKind kind) { return kind == PolarKind::hermitian_odd || kind == PolarKind::hermitian_even; }

// ---------------------------------------------------------------------------
// forms

namespace {

Elem twist(const Field& f, FormType t, Elem x) { return t == FormType::hermitian ? f.conj(x) : x; }

Form make_form(const Field& f, PolarKind kind, int rank) {
  Form form;
  form.dim = ambient_dimension(kind, rank);
  const int d = form.dim;
  form.gram.assign(static_cast<std::size_t>(d) * d, 0);
  auto G = [&](int i, int j) -> Elem& { return form.gram[static_cast<std::size_t>(i) * d + j]; };

  if (kind == PolarKind::symplectic) {
    form.type = FormType::alternating;
    for (int i = 0; i < rank; ++i) {
      G(2 * i, 2 * i + 1) = 1;
      G(2 * i + 1, 2 * i) = f.neg(1);
    }
    return form;
  }

  if (is_hermitian(kind)) {
    form.type = FormType::hermitian;
    for (int i = 0; i < rank; ++i) {
      G(2 * i, 2 * i + 1) = 1;
      G(2 * i + 1, 2 * i) = 1;
    }
    if (kind == PolarKind::hermitian_even) G(2 * rank, 2 * rank) = 1;
    return form;
  }

  form.type = FormType::quadratic;
  form.quad.assign(static_cast<std::size_t>(d) * d, 0);
  auto C = [&](int i, int j) -> Elem& { return form.quad[static_cast<std::size_t>(i) * d + j]; };
  for (int i = 0; i < rank; ++i) C(2 * i, 2 * i + 1) = 1;
  if (kind == PolarKind::parabolic) C(2 * rank, 2 * rank) = 1;
  if (kind == PolarKind::elliptic) {
    // first (a, b) in index order with t^2 + a t + b irreducible
    int a = -1;
    int b = -1;
    for (int ca = 0; ca < f.q() && a < 0; ++ca)
      for (int cb = 1; cb < f.q() && a < 0; ++cb) {
        bool root = false;
        for (int t = 0; t < f.q() && !root; ++t) {
          const Elem te = static_cast<Elem>(t);
          root = f.add(f.add(f.mul(te, te), f.mul(static_cast<Elem>(ca), te)), static_cast<Elem>(cb)) == 0;
        }
        if (!root) {
          a = ca;
          b = cb;
        }
      }
    C(2 * rank, 2 * rank) = 1;
    C(2 * rank, 2 * rank + 1) = static_cast<Elem>(a);
    C(2 * rank + 1, 2 * rank + 1) = static_cast<Elem>(b);
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) G(i, j) = f.add(C(i, j), C(j, i));
  return form;
}

std::uint64_t checked_power(int q, int d) {
  std::uint64_t out = 1;
  for (int i = 0; i < d; ++i) {
    out *= static_cast<std::uint64_t>(q);
    if (out > (1ULL << 28)) throw std::invalid_argument("polar space too large to enumerate (q^d > 2^28)");
  }
  return out;
}

// Greedy: keep the rows of `candidates` that enlarge the span of `start`.
GfMatrix extend_basis(const Field& f, const GfMatrix& start, const GfMatrix& candidates, int target) {
  GfMatrix basis = start;
  for (int r = 0; r < candidates.rows && basis.rows < target; ++r) {
    GfMatrix trial(basis.rows + 1, basis.cols);
    std::copy(basis.data.begin(), basis.data.end(), trial.data.begin());
    const auto row = candidates.row(r);
    std::copy(row.begin(), row.end(), trial.data.begin() + static_cast<std::ptrdiff_t>(basis.data.size()));
    if (gf_rank(f, trial) == trial.rows) basis = std::move(trial);
  }
  return basis;
}

}  // namespace

Elem Form::pair(const Field& f, std::span<const Elem> x, std::span<const Elem> y) const {
  Elem out = 0;
  for (int j = 0; j < dim; ++j) {
    if (y[j] == 0) continue;
    Elem col = 0;
    for (int i = 0; i < dim; ++i) {
      const Elem gij = g(i, j);
      if (gij != 0 && x[i] != 0) col = f.add(col, f.mul(x[i], gij));
    }
    if (col != 0) out = f.add(out, f.mul(col, twist(f, type, y[j])));
  }
  return out;
}

Elem Form::self(const Field& f, std::span<const Elem> x) const {
  switch (type) {
    case FormType::alternating: return 0;
    case FormType::hermitian: return pair(f, x, x);
    case FormType::quadratic: {
      Elem out = 0;
      for (int i = 0; i < dim; ++i) {
        if (x[i] == 0) continue;
        for (int j = i; j < dim; ++j) {
          const Elem c = quad[static_cast<std::size_t>(i) * dim + j];
          if (c != 0 && x[j] != 0) out = f.add(out, f.mul(c, f.mul(x[i], x[j])));
        }
      }
      return out;
    }
  }
  return 0;
}

GfMatrix Form::perp_equations(const Field& f, const Subspace& s) const {
  GfMatrix eq(s.rank, dim);
  for (int r = 0; r < s.rank; ++r) {
    const auto v = s.row(r);
    for (int a = 0; a < dim; ++a) {
      Elem acc = 0;
      for (int b = 0; b < dim; ++b) {
        const Elem gab = g(a, b);
        if (gab != 0 && v[b] != 0) acc = f.add(acc, f.mul(gab, twist(f, type, v[b])));
      }
      eq.at(r, a) = acc;
    }
  }
  return eq;
}

// ---------------------------------------------------------------------------
// PolarSpace

PolarSpace::PolarSpace(PolarKind kind, int rank, Field field, Form form)
    : kind_(kind), rank_(rank), field_(std::move(field)), form_(std::move(form)) {}

PolarSpace PolarSpace::build(PolarKind kind, int rank, int q) {
  if (rank < 1) throw std::invalid_argument("build: rank must be >= 1");
  Field f = Field::of_order(q);
  if (is_hermitian(kind) && !f.has_conjugation())
    throw std::invalid_argument("build: hermitian spaces need a square q, got " + std::to_string(q));
  Form form = make_form(f, kind, rank);
  return from_form(kind, rank, std::move(f), std::move(form));
}

PolarSpace PolarSpace::from_form(PolarKind kind, int rank, Field field, Form form) {
  if (rank < 0) throw std::invalid_argument("from_form: negative rank");
  PolarSpace space(kind, rank, std::move(field), std::move(form));
  space.enumerate_points();
  const ExactCount expected = point_count(rank, twice_type(kind), space.q());
  if (expected.value != static_cast<unsigned long>(space.points_.size()))
    throw std::logic_error("from_form: point count " + std::to_string(space.points_.size()) + " differs from " +
                           expected.value.get_str());
  return space;
}

std::string PolarSpace::name() const {
  const std::string q = std::to_string(this->q());
  const std::string pd = std::to_string(dim() - 1);
  switch (kind_) {
    case PolarKind::hyperbolic: return "Q+(" + pd + "," + q + ")";
    case PolarKind::hermitian_odd:
    case PolarKind::hermitian_even: return "H(" + pd + "," + q + ")";
    case PolarKind::symplectic: return "W(" + pd + "," + q + ")";
    case PolarKind::parabolic: return "Q(" + pd + "," + q + ")";
    case PolarKind::elliptic: return "Q-(" + pd + "," + q + ")";
  }
  return "?";
}

bool PolarSpace::is_singular_vector(std::span<const Elem> x) const {
  return form_.self(field_, x) == 0;
}

void PolarSpace::enumerate_points() {
  const int d = dim();
  const int q = this->q();
  const std::uint64_t total = checked_power(q, d);
  std::vector<Elem> v(d);
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t c = code;
    // digits little-endian over coordinates; the last nonzero digit is the leading coordinate
    for (int i = d - 1; i >= 0; --i) {
      v[i] = static_cast<Elem>(c % q);
      c /= q;
    }
    int lead = 0;
    while (v[lead] == 0) ++lead;
    if (v[lead] != 1) continue;
    if (!is_singular_vector(v)) continue;
    Subspace p;
    p.rank = 1;
    p.dim = d;
    p.rows = v;
    points_.push_back(std::move(p));
  }
  std::sort(points_.begin(), points_.end());
  for (std::size_t i = 0; i < points_.size(); ++i) points_[i].id = static_cast<std::uint32_t>(i);
}

// ---------------------------------------------------------------------------
// subspaces

std::vector<Subspace> extend_subspaces(const PolarSpace& space, const std::vector<Subspace>& lower) {
  const Field& f = space.field();
  const Form& form = space.form();
  std::vector<Subspace> out;
  for (const Subspace& s : lower) {
    for (const Subspace& p : space.points()) {
      bool orthogonal = true;
      for (int r = 0; r < s.rank && orthogonal; ++r) orthogonal = form.pair(f, p.row(0), s.row(r)) == 0;
      if (!orthogonal || contains_vector(f, s, p.row(0))) continue;
      Subspace t = span(f, s, p);
      t.id = Subspace::kNoId;
      out.push_back(std::move(t));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<std::uint32_t>(i);
  return out;
}

std::vector<Subspace> enumerate_subspaces(const PolarSpace& space, int s) {
  if (s < 1 || s > space.rank())
    throw std::invalid_argument("enumerate_subspaces: s = " + std::to_string(s) + " outside [1, " +
                                std::to_string(space.rank()) + "]");
  std::vector<Subspace> current = space.points();
  for (int r = 2; r <= s; ++r) current = extend_subspaces(space, current);
  return current;
}

Subspace perp(const PolarSpace& space, const Subspace& s) {
  if (s.dim != space.dim()) throw std::invalid_argument("perp: dimension mismatch");
  if (s.rank == 0) return full_subspace(space.dim());
  return make_subspace(space.field(), right_nullspace(space.field(), space.form().perp_equations(space.field(), s)));
}

bool is_totally_singular(const PolarSpace& space, const Subspace& s) {
  const Field& f = space.field();
  for (int i = 0; i < s.rank; ++i) {
    if (!space.is_singular_vector(s.row(i))) return false;
    for (int j = i + 1; j < s.rank; ++j)
      if (space.form().pair(f, s.row(i), s.row(j)) != 0) return false;
  }
  return true;
}

int pairing_rank(const PolarSpace& space, const Subspace& a, const Subspace& b) {
  GfMatrix m(a.rank, b.rank);
  for (int i = 0; i < a.rank; ++i)
    for (int j = 0; j < b.rank; ++j) m.at(i, j) = space.form().pair(space.field(), a.row(i), b.row(j));
  return gf_rank(space.field(), std::move(m));
}

bool subspaces_opposite(const PolarSpace& space, const Subspace& a, const Subspace& b) {
  if (a.rank != b.rank) throw std::invalid_argument("subspaces_opposite: rank mismatch");
  return pairing_rank(space, a, b) == a.rank;
}

// ---------------------------------------------------------------------------
// quotient M^⊥/M

Quotient quotient_space(const PolarSpace& space, const Subspace& m) {
  if (m.rank < 1 || m.rank >= space.rank())
    throw std::invalid_argument("quotient_space: need 1 <= rank(M) < n");
  if (!is_totally_singular(space, m)) throw std::invalid_argument("quotient_space: M is not totally singular");
  const Field& f = space.field();
  const int d = space.dim();
  const Subspace mp = perp(space, m);

  GfMatrix basis = extend_basis(f, m.matrix(), mp.matrix(), mp.rank);
  GfMatrix w(basis.rows - m.rank, d);
  std::copy(basis.data.begin() + static_cast<std::ptrdiff_t>(m.rank) * d, basis.data.end(), w.data.begin());

  const Form& parent = space.form();
  Form form;
  form.type = parent.type;
  form.dim = w.rows;
  form.gram.assign(static_cast<std::size_t>(w.rows) * w.rows, 0);
  for (int i = 0; i < w.rows; ++i)
    for (int j = 0; j < w.rows; ++j) form.gram[static_cast<std::size_t>(i) * w.rows + j] = parent.pair(f, w.row(i), w.row(j));
  if (parent.type == FormType::quadratic) {
    form.quad.assign(form.gram.size(), 0);
    for (int i = 0; i < w.rows; ++i) {
      form.quad[static_cast<std::size_t>(i) * w.rows + i] = parent.self(f, w.row(i));
      for (int j = i + 1; j < w.rows; ++j)
        form.quad[static_cast<std::size_t>(i) * w.rows + j] = form.g(i, j);
    }
  }

  // transform E with E * basis = rref(basis), via rref([basis | I])
  const int b = basis.rows;
  GfMatrix aug(b, d + b);
  for (int i = 0; i < b; ++i) {
    for (int j = 0; j < d; ++j) aug.at(i, j) = basis.at(i, j);
    aug.at(i, d + i) = 1;
  }
  std::vector<int> piv = rref_in_place(f, aug);
  std::vector<int> pivots;
  GfMatrix transform(b, b);
  for (int i = 0; i < b; ++i) {
    if (piv[i] >= d) throw std::logic_error("quotient_space: basis is not independent");
    pivots.push_back(piv[i]);
    for (int j = 0; j < b; ++j) transform.at(i, j) = aug.at(i, d + j);
  }

  PolarSpace qs = PolarSpace::from_form(space.kind(), space.rank() - m.rank, f, std::move(form));
  return Quotient{std::move(qs), m, std::move(w), std::move(basis), std::move(pivots), std::move(transform)};
}

Subspace Quotient::down(const PolarSpace& parent, const Subspace& t) const {
  const Field& f = parent.field();
  if (!contains(f, t, radical)) throw std::invalid_argument("Quotient::down: T does not contain M");
  const int b = basis.rows;
  const int mr = radical.rank;
  GfMatrix coords(t.rank, b - mr);
  for (int r = 0; r < t.rank; ++r) {
    const auto v = t.row(r);
    std::vector<Elem> u(b, 0);
    for (int j = 0; j < b; ++j) {
      const Elem c = v[pivots[j]];
      if (c == 0) continue;
      for (int k = 0; k < b; ++k) u[k] = f.add(u[k], f.mul(c, transform.at(j, k)));
    }
    // reject vectors outside M^⊥
    std::vector<Elem> back(parent.dim(), 0);
    for (int k = 0; k < b; ++k)
      if (u[k] != 0)
        for (int c = 0; c < parent.dim(); ++c) back[c] = f.add(back[c], f.mul(u[k], basis.at(k, c)));
    if (!std::equal(back.begin(), back.end(), v.begin()))
      throw std::invalid_argument("Quotient::down: T is not inside M^perp");
    for (int k = mr; k < b; ++k) coords.at(r, k - mr) = u[k];
  }
  return make_subspace(f, std::move(coords));
}

Subspace Quotient::up(const PolarSpace& parent, const Subspace& u) const {
  const Field& f = parent.field();
  const int d = parent.dim();
  GfMatrix rows(radical.rank + u.rank, d);
  std::copy(radical.rows.begin(), radical.rows.end(), rows.data.begin());
  for (int r = 0; r < u.rank; ++r) {
    const auto coeff = u.row(r);
    for (int k = 0; k < complement.rows; ++k) {
      if (coeff[k] == 0) continue;
      for (int c = 0; c < d; ++c)
        rows.at(radical.rank + r, c) = f.add(rows.at(radical.rank + r, c), f.mul(coeff[k], complement.at(k, c)));
    }
  }
  return make_subspace(f, std::move(rows));
}

// ---------------------------------------------------------------------------
// hyperplane sections

namespace {

std::optional<std::pair<PolarKind, int>> classify(FormType type, int dim, const mpz_class& points, int q,
                                                  bool has_conj) {
  std::vector<std::pair<PolarKind, int>> candidates;
  switch (type) {
    case FormType::alternating:
      if (dim % 2 == 0) candidates.emplace_back(PolarKind::symplectic, dim / 2);
      break;
    case FormType::hermitian:
      if (!has_conj) break;
      if (dim % 2 == 0) candidates.emplace_back(PolarKind::hermitian_odd, dim / 2);
      else candidates.emplace_back(PolarKind::hermitian_even, (dim - 1) / 2);
      break;
    case FormType::quadratic:
      if (dim % 2 == 0) {
        candidates.emplace_back(PolarKind::hyperbolic, dim / 2);
        if (dim >= 2) candidates.emplace_back(PolarKind::elliptic, dim / 2 - 1);
      } else {
        candidates.emplace_back(PolarKind::parabolic, (dim - 1) / 2);
      }
      break;
  }
  for (const auto& [kind, rank] : candidates)
    if (point_count(rank, twice_type(kind), q).value == points) return std::make_pair(kind, rank);
  return std::nullopt;
}

std::string section_label(PolarKind kind, int rank, int q) {
  const std::string pd = std::to_string(ambient_dimension(kind, rank) - 1);
  const std::string qs = std::to_string(q);
  switch (kind) {
    case PolarKind::hyperbolic: return "Q+(" + pd + "," + qs + ")";
    case PolarKind::hermitian_odd:
    case PolarKind::hermitian_even: return "H(" + pd + "," + qs + ")";
    case PolarKind::symplectic: return "W(" + pd + "," + qs + ")";
    case PolarKind::parabolic: return "Q(" + pd + "," + qs + ")";
    case PolarKind::elliptic: return "Q-(" + pd + "," + qs + ")";
  }
  return "?";
}

}  // namespace

HyperplaneSection hyperplane_section(const PolarSpace& space, const Subspace& h) {
  const Field& f = space.field();
  const int d = space.dim();
  if (h.dim != d || h.rank != d - 1) throw std::invalid_argument("hyperplane_section: H is not a hyperplane");

  HyperplaneSection out;
  for (const Subspace& p : space.points())
    if (contains_vector(f, h, p.row(0))) ++out.points;

  // polar radical of the restricted form, in coordinates of the basis of H
  const int r = h.rank;
  GfMatrix restricted(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) restricted.at(j, i) = space.form().pair(f, h.row(i), h.row(j));
  const GfMatrix rad = right_nullspace(f, restricted);

  std::vector<std::vector<Elem>> rad_vectors;
  for (int k = 0; k < rad.rows; ++k) {
    std::vector<Elem> v(d, 0);
    for (int i = 0; i < r; ++i)
      if (rad.at(k, i) != 0)
        for (int c = 0; c < d; ++c) v[c] = f.add(v[c], f.mul(rad.at(k, i), h.row(i)[c]));
    rad_vectors.push_back(std::move(v));
  }

  int singular_radical = static_cast<int>(rad_vectors.size());
  if (space.form().type == FormType::quadratic && f.p() == 2 && !rad_vectors.empty()) {
    // Q is additive and Frobenius-semilinear on the polar radical: its kernel has codimension 0 or 1
    bool any = false;
    for (const auto& v : rad_vectors) any = any || space.form().self(f, v) != 0;
    if (any) --singular_radical;
  }
  out.radical_dim = singular_radical;
  out.degenerate = singular_radical > 0;

  const int q = f.q();
  if (!out.degenerate) {
    const auto cls = classify(space.form().type, d - 1, mpz_class(static_cast<unsigned long>(out.points)), q,
                              f.has_conjugation());
    if (cls) {
      out.kind = cls->first;
      out.rank = cls->second;
      out.tag = section_label(cls->first, cls->second, q);
    } else {
      out.tag = "unclassified";
    }
    return out;
  }

  // cone with an (r-1)-dimensional projective vertex over a base of dimension d-1-r
  const int vr = singular_radical;
  const mpz_class vertex_points = gauss(vr, 1, q).value;
  const mpz_class scale = qpow(q, HalfInt::whole(vr));
  const mpz_class rest = mpz_class(static_cast<unsigned long>(out.points)) - vertex_points;
  std::string base = "unclassified";
  if (rest >= 0 && mpz_divisible_p(rest.get_mpz_t(), scale.get_mpz_t())) {
    const auto cls = classify(space.form().type, d - 1 - vr, rest / scale, q, f.has_conjugation());
    if (cls) {
      out.rank = cls->second;
      base = section_label(cls->first, cls->second, q);
    }
  }
  const std::string vertex = vr == 1 ? "P" : "PG(" + std::to_string(vr - 1) + "," + std::to_string(q) + ")";
  out.tag = "cone(" + vertex + "," + base + ")";
  return out;
}

Subspace hyperplane_from_functional(const Field& f, std::span<const Elem> a) {
  GfMatrix eq(1, static_cast<int>(a.size()));
  std::copy(a.begin(), a.end(), eq.data.begin());
  if (gf_rank(f, eq) == 0) throw std::invalid_argument("hyperplane_from_functional: zero functional");
  return make_subspace(f, right_nullspace(f, eq));
}

void write_subspaces_csv(std::ostream& out, const std::vector<Subspace>& subspaces) {
  for (const Subspace& s : subspaces) {
    out << s.id << ',' << s.rank;
    for (Elem e : s.rows) out << ',' << static_cast<int>(e);
    out << '\n';
  }
}

}  // namespace polar
