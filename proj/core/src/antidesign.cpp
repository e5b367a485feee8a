#include "polar_ekr/antidesign.hpp"

#include <numeric>
#include <stdexcept>

#include "polar_ekr/count.hpp"

namespace polar {

namespace {

std::int64_t to_i64(const mpz_class& v, const char* what) {
  if (!v.fits_slong_p()) throw std::overflow_error(std::string(what) + " does not fit in 64 bits");
  return v.get_si();
}

FlagType graph_type(const Geometry& g, const OppositionGraph& graph) { return FlagType::parse(graph.info().type, g.rank()); }

// Ad hoc graphs carry no flag type.
FlagType type_of(const OppositionGraph& graph) {
  return graph.info().type.empty() ? FlagType() : FlagType::parse(graph.info().type, graph.info().n);
}

}  // namespace

mpq_class Antidesign::total() const {
  mpz_class sum = 0;
  for (auto v : values) sum += static_cast<long>(v);
  mpq_class r(sum, denominator);
  r.canonicalize();
  return r;
}

bool Antidesign::same_values(const Antidesign& other) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (static_cast<__int128>(values[i]) * other.denominator != static_cast<__int128>(other.values[i]) * denominator)
      return false;
  return true;
}

std::int64_t min_eigenvalue(const Geometry& g, const OppositionGraph& graph) {
  const Params p = params_of(g.space());
  const FlagType type = graph_type(g, graph);
  if (!p.tight_regime()) {
    const Spectrum spec = graph.spectrum() ? *graph.spectrum() : certified_spectrum(graph);
    return spec.front().value;
  }
  const std::int64_t lambda = -to_i64(lambda_flags(type, p).value, "lambda");
  if (graph.spectrum() && graph.spectrum()->front().value != lambda)
    throw std::logic_error("min_eigenvalue: certified spectrum disagrees with the closed form");
  return lambda;
}

Antidesign chi(const OppositionGraph& graph, FlagIndex f, std::int64_t lambda) {
  if (f >= graph.vertex_count()) throw std::out_of_range("chi: flag index out of range");
  Antidesign v;
  v.type = type_of(graph);
  v.values.assign(graph.vertex_count(), 0);
  v.values[f] = -lambda;
  for (auto u : graph.neighbors(f)) v.values[u] = 1;
  v.constructor = "chi";
  v.base_id = f;
  return v;
}

Antidesign v_subspace(const Geometry& g, int s, SubspaceId id) {
  const Params p = params_of(g.space());
  const int n = g.rank();
  if (s < 1 || s > n) throw std::invalid_argument("v_subspace: s out of range");
  const std::int64_t heavy = to_i64(lambda_subspace(s, p).value, "lambda_s");
  const FlagFamily ch(g, FlagType::chambers(n));
  Antidesign v;
  v.type = ch.type();
  v.values.assign(ch.size(), 0);
  for (FlagIndex c = 0; c < ch.size(); ++c) {
    const SubspaceId cs = ch.part(c, s);
    if (cs == id)
      v.values[c] = heavy;
    else if (g.opposite(s, id, cs))
      v.values[c] = 1;
  }
  v.constructor = "v_subspace";
  v.base_dim = s;
  v.base_id = id;
  return v;
}

Antidesign v_mspace(const Geometry& g, int m, SubspaceId id, int s) {
  const Params p = params_of(g.space());
  if (m < 1 || m >= s || s > g.rank()) throw std::invalid_argument("v_mspace: need 1 <= m < s <= n");
  const std::int64_t heavy = to_i64(lambda_subspace(s, p).value, "lambda_s");
  const std::int64_t light = to_i64(heavy_power(m, s, p).value, "q^deg Phi");
  Antidesign v;
  v.type = FlagType::single(s, g.rank());
  v.values.assign(g.count(s), 0);
  for (SubspaceId t = 0; t < g.count(s); ++t) {
    if (g.incident(m, id, s, t))
      v.values[t] = heavy;
    else if (g.meets_perp_trivially(m, id, s, t))
      v.values[t] = light;
  }
  v.constructor = "v_mspace";
  v.base_dim = m;
  v.base_id = id;
  return v;
}

Antidesign lift(std::span<const FlagIndex> projection, const Antidesign& v) {
  Antidesign out;
  out.type = FlagType::chambers(v.type.rank());
  out.values.resize(projection.size());
  for (std::size_t c = 0; c < projection.size(); ++c) out.values[c] = v.values.at(projection[c]);
  out.denominator = v.denominator;
  out.constructor = "lift(" + v.constructor + ")";
  out.base_dim = v.base_dim;
  out.base_id = v.base_id;
  return out;
}

Antidesign lift(const Geometry& g, const Antidesign& v) { return lift(chamber_projection(g, v.type), v); }

Antidesign chi_sum(const OppositionGraph& graph, std::span<const FlagIndex> flags, std::int64_t lambda) {
  Antidesign v;
  v.type = type_of(graph);
  v.values.assign(graph.vertex_count(), 0);
  for (auto f : flags) {
    v.values.at(f) -= lambda;
    for (auto u : graph.neighbors(f)) v.values[u] += 1;
  }
  v.constructor = "sum";
  return v;
}

bool orthogonal(const Antidesign& v, const IntBasis& basis) {
  for (const auto& u : basis.vectors) {
    if (u.size() != v.size()) throw std::invalid_argument("orthogonal: length mismatch");
    __int128 dot = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (v.values[i] != 0) dot += static_cast<__int128>(v.values[i]) * u[i];
    if (dot != 0) return false;
  }
  return true;
}

bool subspace_scaled_sum_holds(const Geometry& g, const OppositionGraph& chambers, int s, SubspaceId id) {
  const Params p = params_of(g.space());
  const FlagFamily ch(g, FlagType::chambers(g.rank()));
  std::vector<FlagIndex> through;
  for (FlagIndex c = 0; c < ch.size(); ++c)
    if (ch.part(c, s) == id) through.push_back(c);
  const auto sum = chi_sum(chambers, through, min_eigenvalue(g, chambers));
  auto scaled = v_subspace(g, s, id);
  const std::int64_t factor = to_i64(basic_power(s, p).value, "basic power");
  for (auto& x : scaled.values) x *= factor;
  return scaled.same_values(sum);
}

bool mspace_sum_holds(const Geometry& g, const OppositionGraph& sgraph, int m, SubspaceId id, int s) {
  const auto& cof = g.cofaces(m, id, s);
  const std::vector<FlagIndex> through(cof.begin(), cof.end());
  return v_mspace(g, m, id, s).same_values(chi_sum(sgraph, through, min_eigenvalue(g, sgraph)));
}

Pairing pairing(const Antidesign& v, std::span<const FlagIndex> members) {
  if (v.size() == 0) throw std::invalid_argument("pairing: empty antidesign");
  std::vector<char> seen(v.size(), 0);
  mpz_class sum = 0;
  for (auto f : members) {
    if (f >= v.size() || seen[f]) throw std::invalid_argument("pairing: member out of range or repeated");
    seen[f] = 1;
    sum += static_cast<long>(v.values[f]);
  }
  Pairing out;
  out.actual = mpq_class(sum, v.denominator);
  out.actual.canonicalize();
  out.predicted = v.total() * static_cast<unsigned long>(members.size()) / static_cast<unsigned long>(v.size());
  out.predicted.canonicalize();
  out.equal = out.actual == out.predicted;
  return out;
}

std::size_t chi_row_space_rank(const OppositionGraph& graph, std::int64_t lambda) {
  const auto n = graph.vertex_count();
  try {
    return n - eigenspace_basis(graph, lambda).vectors.size();
  } catch (const std::invalid_argument&) {
    return n;
  }
}

}  // namespace polar
