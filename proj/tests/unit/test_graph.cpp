#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <sstream>

#include "polar_ekr/count.hpp"
#include "polar_ekr/graph.hpp"
#include "polar_ekr/modular.hpp"

using namespace polar;

namespace {

const Geometry& w52() {
  static const Geometry g = Geometry::build(PolarKind::symplectic, 3, 2);
  return g;
}

const OppositionGraph& graph_of(const FlagType& t) {
  static std::map<std::string, OppositionGraph> cache;
  auto it = cache.find(t.str());
  if (it == cache.end()) it = cache.emplace(t.str(), OppositionGraph::build(w52(), t)).first;
  return it->second;
}

OppositionGraph complete(std::uint32_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return OppositionGraph::from_edges(n, e);
}

// Power sums sum_i m_i lambda_i^k against closed walks counted directly:
// trace A = 0, trace A^2 = 2|E|, trace A^3 = 6 * triangles.
void expect_trace_identities(const OppositionGraph& g, const Spectrum& s) {
  long double p1 = 0, p2 = 0, p3 = 0;
  std::size_t total = 0;
  for (const auto& e : s) {
    const long double x = static_cast<long double>(e.value);
    p1 += e.multiplicity * x;
    p2 += e.multiplicity * x * x;
    p3 += e.multiplicity * x * x * x;
    total += e.multiplicity;
  }
  std::size_t triangles6 = 0;
  for (std::uint32_t u = 0; u < g.vertex_count(); ++u)
    for (auto v : g.neighbors(u))
      for (auto w : g.neighbors(v))
        if (g.adjacent(w, u)) ++triangles6;
  EXPECT_EQ(total, g.vertex_count());
  EXPECT_EQ(p1, 0.0L);
  EXPECT_EQ(p2, 2.0L * g.edge_count());
  EXPECT_EQ(p3, static_cast<long double>(triangles6));
}

}  // namespace

TEST(Modular, PrimesBelowBound) {
  const auto ps = modp::elimination_primes(4);
  ASSERT_EQ(ps.size(), 4u);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    EXPECT_LT(ps[i], 1U << 26);
    for (std::uint32_t d = 2; d * d <= ps[i]; ++d) ASSERT_NE(ps[i] % d, 0u);
    if (i > 0) EXPECT_LT(ps[i], ps[i - 1]);
  }
  EXPECT_EQ(ps[0], 67108859u);
}

TEST(Modular, ReconstructionAndInverse) {
  const std::int64_t m = 1000003;
  EXPECT_EQ(modp::inverse_mod(3, m) * 3 % m, 1u);
  EXPECT_THROW(modp::inverse_mod(6, 9), std::domain_error);
  for (auto [n, d] : std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 2}, {-5, 7}, {0, 1}, {71, 4}, {-1, 1}}) {
    const std::int64_t a = ((n % m + m) % m) * static_cast<std::int64_t>(modp::inverse_mod(d, m)) % m;
    const auto r = modp::rational_reconstruct(a, m);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->first, n);
    EXPECT_EQ(r->second, d);
  }
  // exhaustive against a search over all fractions within the bound
  const std::int64_t small = 101, bound = 7;
  int unreconstructible = 0;
  for (std::int64_t a = 0; a < small; ++a) {
    std::optional<std::pair<std::int64_t, std::int64_t>> brute;
    for (std::int64_t d = 1; d <= bound && !brute; ++d)
      for (std::int64_t n = -bound; n <= bound && !brute; ++n)
        if (std::gcd(n, d) == 1 && ((n - a * d) % small + small) % small == 0) brute = std::make_pair(n, d);
    EXPECT_EQ(modp::rational_reconstruct(a, small), brute) << a;
    if (!brute) ++unreconstructible;
  }
  EXPECT_GT(unreconstructible, 0);
}

TEST(Modular, EchelonOfSmallMatrix) {
  // rows: (1 2 3), (2 4 6), (1 0 1): rank 2, kernel spanned by (-1, -1, 1)
  const std::vector<std::int64_t> a{1, 2, 3, 2, 4, 6, 1, 0, 1};
  const auto p = modp::elimination_primes(1)[0];
  const auto e = modp::echelon_mod_p(a, 3, 3, p);
  EXPECT_EQ(e.rank(), 2);
  EXPECT_EQ(e.pivots, (std::vector<int>{0, 1}));
  EXPECT_EQ(e.free, (std::vector<int>{2}));
  EXPECT_EQ(e.at(0, 0), 1u);
  EXPECT_EQ(e.at(1, 0), 1u);
  const std::vector<std::int64_t> neg{-4, 0, 0, -9};
  EXPECT_EQ(modp::echelon_mod_p(neg, 2, 2, p).rank(), 2);
}

TEST(Graph, CompleteGraphSpectrum) {
  const auto k4 = complete(4);
  EXPECT_EQ(certified_spectrum(k4), (Spectrum{{-1, 3}, {3, 1}}));
  const auto basis = eigenspace_basis(k4, -1);
  EXPECT_EQ(basis.vectors.size(), 3u);
  for (const auto& v : basis.vectors) {
    EXPECT_EQ(std::accumulate(v.begin(), v.end(), std::int64_t{0}), 0);
    EXPECT_TRUE(is_eigenvector(k4, -1, v));
  }
  EXPECT_THROW(eigenspace_basis(k4, 2), std::invalid_argument);
}

TEST(Graph, IrrationalSpectrumIsNotCertified) {
  const auto path = OppositionGraph::from_edges(3, {{0, 1}, {1, 2}});
  EXPECT_THROW(certified_spectrum(path), CertificationError);
}

TEST(Graph, FromEdgesValidation) {
  EXPECT_THROW(OppositionGraph::from_edges(2, {{0, 0}}), std::invalid_argument);
  EXPECT_THROW(OppositionGraph::from_edges(2, {{0, 2}}), std::invalid_argument);
  EXPECT_THROW(OppositionGraph::from_edges(2, {{0, 1}, {1, 0}}), std::invalid_argument);
  const auto g = OppositionGraph::from_edges(4, {{0, 1}, {2, 3}});
  EXPECT_FALSE(g.connected());
  EXPECT_EQ(g.regular_degree(), 1u);
}

TEST(Graph, DimacsExport) {
  std::ostringstream empty;
  write_dimacs(empty, OppositionGraph::from_edges(5, {}));
  EXPECT_EQ(empty.str(), "p edge 5 0\n");

  std::ostringstream out;
  write_dimacs(out, graph_of(FlagType::single(1, 3)));
  EXPECT_NE(out.str().find("p edge 63 1008\n"), std::string::npos);
  std::istringstream in(out.str());
  const auto back = read_dimacs(in);
  EXPECT_EQ(back.edges(), graph_of(FlagType::single(1, 3)).edges());

  std::ostringstream comp;
  write_dimacs(comp, complete(4), true);
  EXPECT_EQ(comp.str(), "p edge 4 0\n");
  std::ostringstream comp2;
  write_dimacs(comp2, OppositionGraph::from_edges(3, {{0, 2}}), true);
  EXPECT_EQ(comp2.str(), "p edge 3 2\ne 1 2\ne 2 3\n");
}

TEST(Graph, JsonRoundTrip) {
  auto g = graph_of(FlagType::single(3, 3));
  g.attach_spectrum(certified_spectrum(g));
  std::ostringstream out;
  write_graph_json(out, g);
  std::istringstream in(out.str());
  const auto back = read_graph_json(in);
  EXPECT_EQ(back, g);
  std::ostringstream again;
  write_graph_json(again, back);
  EXPECT_EQ(again.str(), out.str());
}

TEST(Graph, W52Valencies) {
  const auto& g = w52();
  struct Case {
    FlagType t;
    std::size_t vertices, degree;
  };
  for (const auto& c : {Case{FlagType::single(1, 3), 63, 32}, Case{FlagType::single(3, 3), 135, 64},
                        Case{FlagType::single(2, 3), 315, 128}, Case{FlagType::chambers(3), 2835, 512}}) {
    const auto& gr = graph_of(c.t);
    EXPECT_EQ(gr.vertex_count(), c.vertices);
    EXPECT_EQ(gr.regular_degree(), c.degree);
    EXPECT_TRUE(gr.connected());
    const FlagFamily fam(g, c.t);
    for (std::uint32_t u = 0; u < gr.vertex_count(); u += 17)
      for (std::uint32_t v = 0; v < gr.vertex_count(); ++v)
        ASSERT_EQ(gr.adjacent(u, v), is_opposite(g, c.t, fam.flag(u), fam.flag(v)));
  }
}

TEST(Graph, ThreadedBuildIsIdentical) {
  const auto t = FlagType({1, 3}, 3);
  EXPECT_EQ(OppositionGraph::build(w52(), t, 3), OppositionGraph::build(w52(), t, 1));
}

TEST(Graph, SizeLimit) {
  EXPECT_THROW(OppositionGraph::build(w52(), FlagType::chambers(3), 1, GraphLimits{100000, 1000}), std::length_error);
  EXPECT_THROW(certified_spectrum(graph_of(FlagType::single(2, 3)), SpectrumOptions{100, 1e-6, 4}), std::length_error);
}

TEST(Graph, SubspaceGraphSpectra) {
  const Params p{3, 2, 2};
  const std::map<int, Spectrum> expected{
      {1, {{-4, 35}, {4, 27}, {32, 1}}},
      {2, {{-16, 35}, {-4, 168}, {8, 84}, {16, 27}, {128, 1}}},
      {3, {{-8, 50}, {4, 84}, {64, 1}}},
  };
  for (int s = 1; s <= 3; ++s) {
    const auto& gr = graph_of(FlagType::single(s, 3));
    const Spectrum spec = certified_spectrum(gr);
    expect_trace_identities(gr, spec);
    EXPECT_EQ(spec, expected.at(s)) << s;
    EXPECT_EQ(-spec.front().value, lambda_subspace(s, p).value.get_si());
  }
}

TEST(Graph, RatioBoundFromSpectrum) {
  const Params p{3, 2, 2};
  for (int s : {1, 3}) {
    const auto& gr = graph_of(FlagType::single(s, 3));
    const Spectrum spec = certified_spectrum(gr);
    const std::int64_t n = gr.vertex_count(), d = spec.back().value, l = spec.front().value;
    EXPECT_EQ(n * -l % (d - l), 0);
    EXPECT_EQ(n * -l / (d - l), ratio_bound(FlagType::single(s, 3), p).value.get_si());
  }
}

TEST(Graph, MinimalEigenspaceBasis) {
  const auto& gr = graph_of(FlagType::single(1, 3));
  const auto basis = eigenspace_basis(gr, -4);
  EXPECT_EQ(basis.vectors.size(), 35u);
  for (const auto& v : basis.vectors) EXPECT_TRUE(is_eigenvector(gr, -4, v));
  EXPECT_THROW(eigenspace_basis(gr, -5), std::invalid_argument);
}

TEST(Graph, QuotientRelation) {
  const auto& ch = graph_of(FlagType::chambers(3));
  for (const auto& t : {FlagType::single(1, 3), FlagType::single(3, 3)}) {
    const auto rep = quotient_relation_check(w52(), ch, graph_of(t), true);
    EXPECT_TRUE(rep.holds) << t.str();
    EXPECT_EQ(rep.factor, t.front() == 1 ? 16 : 8);
    EXPECT_EQ(rep.lifted_orthogonal, true);
  }
  const auto self = quotient_relation_check(w52(), ch, ch);
  EXPECT_TRUE(self.holds);
  EXPECT_EQ(self.factor, 1);
  const auto proj = chamber_projection(w52(), FlagType::chambers(3));
  for (std::size_t i = 0; i < proj.size(); ++i) ASSERT_EQ(proj[i], i);
  // the chamber graph must come first
  EXPECT_THROW(quotient_relation_check(w52(), graph_of(FlagType::single(1, 3)), ch), std::invalid_argument);
}
