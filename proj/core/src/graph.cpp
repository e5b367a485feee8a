#include "polar_ekr/graph.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "polar_ekr/modular.hpp"

namespace polar {

namespace {

using Json = nlohmann::ordered_json;

GraphInfo info_of(const Geometry& g, const FlagType& type) {
  const PolarSpace& sp = g.space();
  const Params p = params_of(sp);
  return GraphInfo{sp.name(), std::string(to_string(sp.kind())), p.n, p.twice_e, p.q, type.str()};
}

}  // namespace

OppositionGraph OppositionGraph::build(const Geometry& g, const FlagType& type, int threads, GraphLimits limits) {
  if (type.rank() != g.rank()) throw std::invalid_argument("build_graph: flag type rank differs from space rank");
  const Params p = params_of(g.space());
  const mpz_class predicted_vertices = flag_count(type, p).value;
  const mpz_class predicted_entries = predicted_vertices * opposition_degree(type, p).value;
  if (predicted_vertices > limits.max_vertices || predicted_entries > limits.max_adjacency)
    throw std::length_error("build_graph: " + predicted_vertices.get_str() + " vertices with " +
                            predicted_entries.get_str() + " adjacency entries exceed the configured limit");

  const FlagFamily fam(g, type);
  const std::size_t n = fam.size();
  const auto& dims = type.dims();
  const int w = fam.width();
  for (int s : dims) (void)g.opposites(s, 0);  // build lazy tables before the workers start

  std::vector<std::vector<std::uint32_t>> lists(n);
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const auto fi = fam.flag(static_cast<FlagIndex>(i));
      auto& out = lists[i];
      for (SubspaceId top : g.opposites(dims.back(), fi[w - 1])) {
        const auto [a, b] = fam.top_range(top);
        for (FlagIndex j = a; j < b; ++j) {
          const auto fj = fam.flag(j);
          bool opp = true;
          for (int k = 0; k + 1 < w && opp; ++k) opp = g.opposite(dims[k], fi[k], fj[k]);
          if (opp) out.push_back(j);
        }
      }
    }
  };
  const std::size_t t = static_cast<std::size_t>(std::max(1, threads));
  if (t == 1 || n < 256) {
    work(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t block = (n + t - 1) / t;
    for (std::size_t lo = 0; lo < n; lo += block) pool.emplace_back(work, lo, std::min(n, lo + block));
  }

  OppositionGraph graph;
  graph.info_ = info_of(g, type);
  graph.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) graph.offsets_[i + 1] = graph.offsets_[i] + lists[i].size();
  graph.adjacency_.reserve(graph.offsets_[n]);
  for (auto& l : lists) {
    graph.adjacency_.insert(graph.adjacency_.end(), l.begin(), l.end());
    std::vector<std::uint32_t>().swap(l);
  }
  const auto deg = graph.regular_degree();
  if (!deg || mpz_class(static_cast<unsigned long>(*deg)) != opposition_degree(type, p).value)
    throw std::logic_error("build_graph: opposition graph is not regular of the predicted valency");
  return graph;
}

OppositionGraph OppositionGraph::from_edges(std::size_t vertices,
                                            std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                                            GraphInfo info) {
  std::vector<std::vector<std::uint32_t>> lists(vertices);
  for (auto [u, v] : edges) {
    if (u >= vertices || v >= vertices) throw std::invalid_argument("from_edges: vertex out of range");
    if (u == v) throw std::invalid_argument("from_edges: loop");
    lists[u].push_back(v);
    lists[v].push_back(u);
  }
  OppositionGraph graph;
  graph.info_ = std::move(info);
  graph.offsets_.assign(vertices + 1, 0);
  for (std::size_t i = 0; i < vertices; ++i) {
    auto& l = lists[i];
    std::sort(l.begin(), l.end());
    if (std::adjacent_find(l.begin(), l.end()) != l.end()) throw std::invalid_argument("from_edges: duplicate edge");
    graph.offsets_[i + 1] = graph.offsets_[i] + l.size();
  }
  for (const auto& l : lists) graph.adjacency_.insert(graph.adjacency_.end(), l.begin(), l.end());
  return graph;
}

bool OppositionGraph::adjacent(std::uint32_t u, std::uint32_t v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<std::size_t> OppositionGraph::regular_degree() const {
  const std::size_t n = vertex_count();
  if (n == 0) return 0;
  const std::size_t d = degree(0);
  for (std::uint32_t v = 1; v < n; ++v)
    if (degree(v) != d) return std::nullopt;
  return d;
}

bool OppositionGraph::connected() const {
  const std::size_t n = vertex_count();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto u : neighbors(v))
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
  }
  return reached == n;
}

void OppositionGraph::attach_spectrum(Spectrum s) {
  std::size_t total = 0;
  for (const auto& e : s) total += e.multiplicity;
  if (total != vertex_count()) throw std::invalid_argument("attach_spectrum: multiplicities do not sum to the vertex count");
  spectrum_ = std::move(s);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> OppositionGraph::edges() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(edge_count());
  for (std::uint32_t u = 0; u < vertex_count(); ++u)
    for (auto v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

// ---------------------------------------------------------------- export

void write_dimacs(std::ostream& out, const OppositionGraph& graph, bool complement) {
  const std::size_t n = graph.vertex_count();
  const std::size_t m = complement ? n * (n - (n > 0)) / 2 - graph.edge_count() : graph.edge_count();
  if (!graph.info().space.empty())
    out << "c " << graph.info().space << " J=" << graph.info().type << (complement ? " complement" : "") << '\n';
  out << "p edge " << n << ' ' << m << '\n';
  for (std::uint32_t u = 0; u < n; ++u) {
    if (!complement) {
      for (auto v : graph.neighbors(u))
        if (u < v) out << "e " << u + 1 << ' ' << v + 1 << '\n';
      continue;
    }
    const auto nb = graph.neighbors(u);
    auto it = std::upper_bound(nb.begin(), nb.end(), u);
    for (std::uint32_t v = u + 1; v < n; ++v) {
      if (it != nb.end() && *it == v) {
        ++it;
        continue;
      }
      out << "e " << u + 1 << ' ' << v + 1 << '\n';
    }
  }
}

OppositionGraph read_dimacs(std::istream& in) {
  std::string line;
  std::size_t n = 0, m = 0;
  bool header = false;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    char tag = 0;
    ls >> tag;
    if (tag == 'p') {
      std::string fmt;
      ls >> fmt >> n >> m;
      if (!ls || (fmt != "edge" && fmt != "col")) throw std::invalid_argument("read_dimacs: bad header");
      header = true;
    } else if (tag == 'e') {
      std::size_t u = 0, v = 0;
      ls >> u >> v;
      if (!header || !ls || u == 0 || v == 0 || u > n || v > n) throw std::invalid_argument("read_dimacs: bad edge");
      edges.emplace_back(static_cast<std::uint32_t>(u - 1), static_cast<std::uint32_t>(v - 1));
    } else {
      throw std::invalid_argument("read_dimacs: unknown line");
    }
  }
  if (!header || edges.size() != m) throw std::invalid_argument("read_dimacs: edge count differs from header");
  return OppositionGraph::from_edges(n, std::move(edges));
}

void write_graph_json(std::ostream& out, const OppositionGraph& graph) {
  const auto& info = graph.info();
  Json j;
  j["schema"] = "polar-ekr/graph/1";
  j["space"] = info.space;
  j["kind"] = info.kind;
  j["n"] = info.n;
  j["twice_e"] = info.twice_e;
  j["q"] = info.q;
  j["J"] = info.type;
  j["n_vertices"] = graph.vertex_count();
  const auto deg = graph.regular_degree();
  j["degree"] = deg ? Json(*deg) : Json(nullptr);
  Json edges = Json::array();
  for (auto [u, v] : graph.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  if (graph.spectrum()) {
    Json spec = Json::array();
    for (const auto& e : *graph.spectrum()) spec.push_back({{"eigenvalue", e.value}, {"multiplicity", e.multiplicity}});
    j["spectrum"] = std::move(spec);
  }
  out << j.dump() << '\n';
}

OppositionGraph read_graph_json(std::istream& in) {
  const Json j = Json::parse(in);
  if (j.at("schema") != "polar-ekr/graph/1") throw std::invalid_argument("read_graph_json: unknown schema");
  GraphInfo info{j.at("space"), j.at("kind"), j.at("n"), j.at("twice_e"), j.at("q"), j.at("J")};
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>());
  auto graph = OppositionGraph::from_edges(j.at("n_vertices").get<std::size_t>(), std::move(edges), std::move(info));
  if (j.contains("spectrum")) {
    Spectrum s;
    for (const auto& e : j["spectrum"]) s.push_back({e.at("eigenvalue"), e.at("multiplicity")});
    graph.attach_spectrum(std::move(s));
  }
  return graph;
}

// ---------------------------------------------------------------- spectrum

bool is_eigenvector(const OppositionGraph& graph, std::int64_t lambda, std::span<const std::int64_t> x) {
  const std::size_t n = graph.vertex_count();
  if (x.size() != n) throw std::invalid_argument("is_eigenvector: length mismatch");
  for (std::uint32_t u = 0; u < n; ++u) {
    __int128 acc = -static_cast<__int128>(lambda) * x[u];
    for (auto v : graph.neighbors(u)) acc += x[v];
    if (acc != 0) return false;
  }
  return true;
}

namespace {

void check_dense(const OppositionGraph& graph, const SpectrumOptions& options) {
  if (graph.vertex_count() > options.dense_limit)
    throw std::length_error("spectrum: " + std::to_string(graph.vertex_count()) +
                            " vertices exceed the dense exact limit of " + std::to_string(options.dense_limit));
}

std::vector<std::int64_t> shifted_dense(const OppositionGraph& graph, std::int64_t lambda) {
  const std::size_t n = graph.vertex_count();
  std::vector<std::int64_t> a(n * n, 0);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (auto v : graph.neighbors(u)) a[u * n + v] = 1;
    a[u * n + u] = -lambda;
  }
  return a;
}

// Wang reconstruction over arbitrary moduli, used once more than two primes are combined.
std::optional<std::pair<mpz_class, mpz_class>> reconstruct_mpz(const mpz_class& a, const mpz_class& m) {
  mpz_class bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = m, r1 = a, t0 = 0, t1 = 1;
  while (r1 > bound) {
    const mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    mpz_class t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1 < 0) {
    r1 = -r1;
    t1 = -t1;
  }
  if (t1 == 0 || t1 > bound) return std::nullopt;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return std::nullopt;
  return std::make_pair(r1, t1);
}

// Kernel vectors from echelon forms sharing one pivot set; nullopt when some
// entry does not reconstruct or a scaled vector leaves int64.
std::optional<std::vector<std::vector<std::int64_t>>> reconstruct_kernel(const std::vector<modp::Echelon>& forms) {
  const auto& e0 = forms.front();
  const int rank = e0.rank();
  const std::size_t k = e0.free.size();
  const std::size_t n = static_cast<std::size_t>(e0.cols);
  std::vector<std::vector<std::int64_t>> out;
  out.reserve(k);

  // CRT data
  mpz_class modulus = 1;
  for (const auto& e : forms) modulus *= e.prime;
  const bool small = forms.size() <= 2;
  const std::int64_t small_mod = small ? static_cast<std::int64_t>(modulus.get_si()) : 0;
  std::int64_t lift = 0;  // p0^{-1} mod p1, for the two-prime case
  if (forms.size() == 2) lift = static_cast<std::int64_t>(modp::inverse_mod(forms[0].prime, forms[1].prime));

  std::vector<std::int64_t> nums(rank), dens(rank);
  for (std::size_t j = 0; j < k; ++j) {
    __int128 common = 1;
    for (int i = 0; i < rank; ++i) {
      std::int64_t num = 0, den = 1;
      if (small) {
        // residue of -R[i][j]
        std::int64_t r0 = (forms[0].prime - forms[0].at(i, j)) % forms[0].prime;
        std::int64_t res = r0;
        if (forms.size() == 2) {
          const std::int64_t p0 = forms[0].prime, p1 = forms[1].prime;
          const std::int64_t r1 = (p1 - forms[1].at(i, j)) % p1;
          const std::int64_t d = ((r1 - r0 % p1) % p1 + p1) % p1;
          res = r0 + p0 * static_cast<std::int64_t>(static_cast<__int128>(d) * lift % p1);
        }
        if (res != 0) {
          const auto rec = modp::rational_reconstruct(res, small_mod);
          if (!rec) return std::nullopt;
          num = rec->first;
          den = rec->second;
        }
      } else {
        mpz_class res = 0, m = 1;
        for (const auto& e : forms) {
          const mpz_class r = (e.prime - e.at(i, j)) % e.prime;
          // res + m * t == r (mod p)
          mpz_class t = (r - res) % e.prime;
          if (t < 0) t += e.prime;
          mpz_class inv;
          const mpz_class pm = e.prime;
          mpz_invert(inv.get_mpz_t(), mpz_class(m % pm).get_mpz_t(), pm.get_mpz_t());
          t = t * inv % pm;
          res += m * t;
          m *= e.prime;
        }
        if (res != 0) {
          const auto rec = reconstruct_mpz(res, m);
          if (!rec || !rec->first.fits_slong_p() || !rec->second.fits_slong_p()) return std::nullopt;
          num = rec->first.get_si();
          den = rec->second.get_si();
        }
      }
      nums[i] = num;
      dens[i] = den;
      common = common / std::gcd(static_cast<std::int64_t>(common % den), den) * den;
      if (common > INT64_MAX) return std::nullopt;
    }
    std::vector<std::int64_t> v(n, 0);
    v[e0.free[j]] = static_cast<std::int64_t>(common);
    for (int i = 0; i < rank; ++i) {
      const __int128 x = static_cast<__int128>(nums[i]) * (common / dens[i]);
      if (x > INT64_MAX || x < INT64_MIN) return std::nullopt;
      v[e0.pivots[i]] = static_cast<std::int64_t>(x);
    }
    std::int64_t g = 0;
    for (auto x : v) g = std::gcd(g, x);
    if (g > 1)
      for (auto& x : v) x /= g;
    out.push_back(std::move(v));
  }
  return out;
}

IntBasis certify_kernel(const OppositionGraph& graph, std::int64_t lambda, const SpectrumOptions& options) {
  const std::size_t n = graph.vertex_count();
  const auto a = shifted_dense(graph, lambda);
  const auto primes = modp::elimination_primes(options.max_primes);
  std::vector<modp::Echelon> same;
  for (auto p : primes) {
    auto e = modp::echelon_mod_p(a, static_cast<int>(n), static_cast<int>(n), p);
    if (same.empty() || e.rank() > same.front().rank()) {
      same.clear();
      same.push_back(std::move(e));
    } else if (e.pivots == same.front().pivots) {
      same.push_back(std::move(e));
    } else {
      continue;
    }
    IntBasis basis{lambda, n, {}};
    if (same.front().nullity() == 0) return basis;
    auto vecs = reconstruct_kernel(same);
    if (!vecs) continue;
    bool ok = true;
    for (const auto& v : *vecs) ok = ok && is_eigenvector(graph, lambda, v);
    if (!ok) continue;
    basis.vectors = std::move(*vecs);
    return basis;
  }
  throw CertificationError("kernel of A - (" + std::to_string(lambda) + ")I not certified with " +
                           std::to_string(primes.size()) + " primes");
}

}  // namespace

Spectrum certified_spectrum(const OppositionGraph& graph, const SpectrumOptions& options) {
  check_dense(graph, options);
  const std::size_t n = graph.vertex_count();
  if (n == 0) return {};
  std::map<std::int64_t, std::size_t> numeric;
  {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::uint32_t u = 0; u < n; ++u)
      for (auto v : graph.neighbors(u)) a(u, v) = 1.0;
    // the QR iteration occasionally stalls on highly degenerate integer
    // matrices; a non-integral diagonal shift avoids it
    Eigen::VectorXd values;
    double applied = 0.0;
    for (double shift : {0.0, 0.5, 0.3183098861837907, -0.7071067811865476}) {
      a.diagonal().array() += shift - applied;
      applied = shift;
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
      if (es.info() == Eigen::Success) {
        values = es.eigenvalues().array() - shift;
        break;
      }
    }
    if (values.size() == 0) throw CertificationError("numeric eigensolver did not converge");
    for (double x : values) {
      const double r = std::round(x);
      if (std::abs(x - r) > options.tolerance)
        throw CertificationError("eigenvalue candidate " + std::to_string(x) + " is not within tolerance of an integer");
      ++numeric[static_cast<std::int64_t>(r)];
    }
  }
  Spectrum out;
  std::size_t total = 0;
  for (const auto& [value, mult] : numeric) {
    const IntBasis basis = certify_kernel(graph, value, options);
    if (basis.vectors.size() != mult)
      throw CertificationError("eigenvalue " + std::to_string(value) + ": exact multiplicity " +
                               std::to_string(basis.vectors.size()) + " differs from numeric " + std::to_string(mult));
    out.push_back({value, mult});
    total += mult;
  }
  if (total != n) throw CertificationError("certified multiplicities do not sum to the vertex count");
  if (const auto d = graph.regular_degree(); d && out.back().value != static_cast<std::int64_t>(*d))
    throw CertificationError("largest eigenvalue differs from the valency");
  return out;
}

IntBasis eigenspace_basis(const OppositionGraph& graph, std::int64_t lambda, const SpectrumOptions& options) {
  check_dense(graph, options);
  IntBasis basis = certify_kernel(graph, lambda, options);
  if (basis.vectors.empty()) throw std::invalid_argument(std::to_string(lambda) + " is not an eigenvalue");
  return basis;
}

// ---------------------------------------------------------------- incidence

std::vector<FlagIndex> chamber_projection(const Geometry& g, const FlagType& type) {
  const FlagFamily ch(g, FlagType::chambers(g.rank()));
  const FlagFamily fam(g, type);
  std::vector<FlagIndex> out(ch.size());
  for (FlagIndex c = 0; c < ch.size(); ++c) out[c] = *fam.index_of(restrict_flag(ch.type(), ch.flag(c), type));
  return out;
}

QuotientReport quotient_relation_check(const Geometry& g, const OppositionGraph& chambers,
                                       const OppositionGraph& flags, bool sample_eigenvectors) {
  const int n = g.rank();
  if (FlagType::parse(chambers.info().type, n) != FlagType::chambers(n))
    throw std::invalid_argument("quotient_relation_check: first graph must be the chamber graph");
  const FlagType type = FlagType::parse(flags.info().type, n);
  const Params p = params_of(g.space());
  QuotientReport rep;
  rep.type = type;
  rep.ell = ell(type, p);
  rep.factor = qpow(p.q, rep.ell);
  if (!rep.factor.fits_ulong_p()) throw std::overflow_error("quotient_relation_check: q^l too large");
  const std::size_t factor = rep.factor.get_ui();

  const auto proj = chamber_projection(g, type);
  std::vector<std::size_t> hits(flags.vertex_count(), 0);
  for (std::uint32_t c = 0; c < chambers.vertex_count(); ++c) {
    const auto nb = chambers.neighbors(c);
    for (auto d : nb) ++hits[proj[d]];
    for (auto f : flags.neighbors(proj[c])) {
      if (hits[f] != factor) ++rep.mismatches;
      hits[f] = 0;
    }
    for (auto d : nb)
      if (hits[proj[d]] != 0) {
        ++rep.mismatches;
        hits[proj[d]] = 0;
      }
  }
  rep.holds = rep.mismatches == 0;

  if (sample_eigenvectors) {
    const Spectrum spec = flags.spectrum() ? *flags.spectrum() : certified_spectrum(flags);
    const auto lift = [&](const std::vector<std::int64_t>& v) {
      std::vector<std::int64_t> out(proj.size());
      for (std::size_t c = 0; c < proj.size(); ++c) out[c] = v[proj[c]];
      return out;
    };
    std::vector<std::vector<std::int64_t>> lifted;
    bool ok = true;
    for (const auto& e : {spec.front(), spec.back()}) {
      const auto basis = eigenspace_basis(flags, e.value);
      auto mv = lift(basis.vectors.front());
      ok = ok && is_eigenvector(chambers, e.value * static_cast<std::int64_t>(factor), mv);
      lifted.push_back(std::move(mv));
    }
    __int128 dot = 0;
    for (std::size_t c = 0; c < proj.size(); ++c) dot += static_cast<__int128>(lifted[0][c]) * lifted[1][c];
    rep.lifted_orthogonal = ok && (spec.size() == 1 || dot == 0);
  }
  return rep;
}

}  // namespace polar
