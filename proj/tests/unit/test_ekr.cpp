#include <gtest/gtest.h>

#include <sstream>

#include "polar_ekr/count.hpp"
#include "polar_ekr/ekr.hpp"

using namespace polar;

namespace {

const Geometry& w52() {
  static const Geometry g = Geometry::build(PolarKind::symplectic, 3, 2);
  return g;
}

const OppositionGraph& chamber_graph() {
  static const OppositionGraph g = OppositionGraph::build(w52(), FlagType::chambers(3));
  return g;
}

// Generators pairwise meeting nontrivially, checked directly on subspaces.
bool pairwise_meeting(const Geometry& g, const std::vector<FlagIndex>& gens) {
  const Field& f = g.space().field();
  for (auto a : gens)
    for (auto b : gens)
      if (meet(f, perp(g.space(), g.subspace(g.rank(), a)), g.subspace(g.rank(), b)).rank == 0) return false;
  return true;
}

}  // namespace

TEST(Ekr, ExampleSizes) {
  const auto& g = w52();
  const auto a = build_example(g, ExampleFamily::a, 3);
  EXPECT_EQ(a.size(), 7u);
  EXPECT_EQ(a.type, FlagType::single(1, 3));
  for (auto p : a.members) EXPECT_TRUE(g.incident(1, p, 3, 3));
  const auto b = build_example(g, ExampleFamily::b, 10);
  EXPECT_EQ(b.size(), 15u);
  for (auto t : b.members) EXPECT_TRUE(g.incident(1, 10, 3, t));
  EXPECT_TRUE(verify_ekr(g, a).ok);
  EXPECT_TRUE(verify_ekr(g, b).ok);
  EXPECT_THROW(build_example(g, ExampleFamily::c), std::invalid_argument);
  EXPECT_THROW(build_example(g, ExampleFamily::d), std::invalid_argument);
  EXPECT_THROW(build_example(g, ExampleFamily::a, 135), std::invalid_argument);
  EXPECT_EQ(parse_family("b"), ExampleFamily::b);
  EXPECT_FALSE(parse_family("e").has_value());
}

TEST(Ekr, SpinorClassesOfHyperbolicSpaces) {
  for (int n : {3, 4}) {
    const auto g = Geometry::build(PolarKind::hyperbolic, n, 2);
    std::vector<SubspaceId> all(g.count(n));
    for (SubspaceId i = 0; i < all.size(); ++i) all[i] = i;
    for (SubspaceId ref : {SubspaceId{0}, SubspaceId{5}}) {
      const auto [same, other] = parity_classes(g, all, ref);
      EXPECT_EQ(same.size(), other.size()) << n;
      // parity is an equivalence: each class is closed under the relation
      const Field& f = g.space().field();
      for (auto x : same)
        for (auto y : same) ASSERT_EQ((meet(f, g.subspace(n, x), g.subspace(n, y)).rank - n) % 2, 0);
    }
  }
  const auto q5 = Geometry::build(PolarKind::hyperbolic, 3, 2);
  const auto c = build_example(q5, ExampleFamily::c, 0);
  EXPECT_EQ(c.size(), 15u);
  EXPECT_TRUE(pairwise_meeting(q5, c.members));
}

TEST(Ekr, HyperbolicSectionExample) {
  const auto g = Geometry::build(PolarKind::parabolic, 3, 2);
  const auto sec = hyperbolic_section(g);
  EXPECT_EQ(sec.generators.size(), 30u);
  EXPECT_EQ(hyperplane_section(g.space(), sec.hyperplane).tag, "Q+(5,2)");
  const auto d = build_example(g, ExampleFamily::d, 0);
  EXPECT_EQ(d.size(), 15u);
  EXPECT_TRUE(verify_ekr(g, d).ok);
  const auto gr = OppositionGraph::build(g, FlagType::single(3, 3));
  const auto sharp = ratio_sharpness(g, gr, d);
  EXPECT_TRUE(sharp.sharp);
  EXPECT_TRUE(sharp.certificate);
}

TEST(Ekr, BlowUps) {
  const auto& g = w52();
  const auto a = blow_up(g, build_example(g, ExampleFamily::a, 0), FlagType::chambers(3));
  const auto b = blow_up(g, build_example(g, ExampleFamily::b, 0), FlagType::chambers(3));
  EXPECT_EQ(a.size(), 315u);
  EXPECT_EQ(b.size(), 315u);
  EXPECT_TRUE(verify_ekr(chamber_graph(), a.members).ok);
  EXPECT_TRUE(verify_ekr(chamber_graph(), b.members).ok);
  const EKRSet gen{FlagType::single(3, 3), {42}, "generator"};
  const auto single = blow_up(g, gen, FlagType::chambers(3));
  EXPECT_EQ(single.size(), 21u);
  EXPECT_TRUE(verify_ekr(chamber_graph(), single.members).ok);
  const auto partial = blow_up(g, build_example(g, ExampleFamily::a, 0), FlagType({1, 3}, 3));
  EXPECT_EQ(partial.size(), 7u * 15u);
  EXPECT_THROW(blow_up(g, gen, FlagType::single(1, 3)), std::invalid_argument);
}

TEST(Ekr, Verification) {
  const auto& gr = chamber_graph();
  const FlagIndex c = 7;
  const FlagIndex d = gr.neighbors(c)[3];
  const auto bad = verify_ekr(gr, std::vector<FlagIndex>{c, d});
  EXPECT_FALSE(bad.ok);
  EXPECT_EQ(bad.violation, std::make_pair(std::min(c, d), std::max(c, d)));
  EXPECT_TRUE(verify_ekr(gr, std::vector<FlagIndex>{}).ok);
  EXPECT_TRUE(verify_ekr(gr, std::vector<FlagIndex>{5}).ok);
  EXPECT_FALSE(verify_ekr(w52(), EKRSet{FlagType::chambers(3), {std::min(c, d), std::max(c, d)}, ""}).ok);
}

TEST(Ekr, RatioSharpness) {
  const auto& g = w52();
  const auto a = blow_up(g, build_example(g, ExampleFamily::a, 0), FlagType::chambers(3));
  const auto sa = ratio_sharpness(g, chamber_graph(), a);
  EXPECT_EQ(sa.bound, 315);
  EXPECT_TRUE(sa.sharp);
  EXPECT_TRUE(sa.certificate);
  const auto single = blow_up(g, EKRSet{FlagType::single(3, 3), {0}, ""}, FlagType::chambers(3));
  const auto ss = ratio_sharpness(g, chamber_graph(), single);
  EXPECT_FALSE(ss.sharp);
  EXPECT_FALSE(ss.certificate);
  const auto g3 = OppositionGraph::build(g, FlagType::single(3, 3));
  const auto sb = ratio_sharpness(g, g3, build_example(g, ExampleFamily::b, 0));
  EXPECT_TRUE(sb.sharp);
  EXPECT_TRUE(sb.certificate);
}

TEST(Ekr, XYZStatistics) {
  const auto& g = w52();
  const auto base = build_example(g, ExampleFamily::a, 0);
  const auto a = blow_up(g, base, FlagType::chambers(3));
  const SubspaceId inside = base.members.front();
  SubspaceId outside = 0;
  while (base.contains(outside)) ++outside;
  const auto in = xyz_chambers(g, a, 1, inside);
  EXPECT_EQ(in.x, 45u);
  EXPECT_EQ(in.y, 0u);
  EXPECT_EQ(in.z, 270u);
  EXPECT_TRUE(in.heavy);
  EXPECT_TRUE(in.identity);
  const auto out = xyz_chambers(g, a, 1, outside);
  EXPECT_EQ(out.x, 0u);
  EXPECT_EQ(out.y, 180u);
  EXPECT_EQ(out.z, 135u);
  EXPECT_FALSE(out.heavy);
  EXPECT_TRUE(out.identity);

  const auto b = build_example(g, ExampleFamily::b, 4);
  const auto probe = xyz_subspaces(g, b, 1, 4);
  EXPECT_EQ(probe.x, 15u);
  EXPECT_EQ(probe.y, 0u);
  EXPECT_TRUE(probe.heavy);
  EXPECT_TRUE(probe.identity);
  for (SubspaceId m = 0; m < g.count(1); ++m) EXPECT_TRUE(xyz_subspaces(g, b, 1, m).identity);
  for (SubspaceId m = 0; m < g.count(2); ++m) EXPECT_TRUE(xyz_subspaces(g, b, 2, m).identity);
}

TEST(Ekr, Weights) {
  const auto& g = w52();
  const auto base = build_example(g, ExampleFamily::a, 0);
  const auto a = blow_up(g, base, FlagType::chambers(3));
  const auto heavy = heavy_subspaces(g, a, 1);
  EXPECT_EQ(std::vector<FlagIndex>(heavy.begin(), heavy.end()), base.members);
  EXPECT_EQ(heavy_subspaces(g, a, 3), std::vector<SubspaceId>{0});
  const auto b = build_example(g, ExampleFamily::b, 4);
  EXPECT_EQ(heavy_subspaces(g, b, 1), std::vector<SubspaceId>{4});
  const auto w = weights(g, b, 1);
  EXPECT_EQ(w[4], 15u);
}

TEST(Ekr, JsonRoundTrip) {
  const auto& g = w52();
  const auto a = build_example(g, ExampleFamily::a, 2);
  std::stringstream io;
  write_ekr_json(io, g, a);
  const auto back = read_ekr_json(io, g);
  EXPECT_EQ(back.members, a.members);
  EXPECT_EQ(back.type, a.type);
  EXPECT_EQ(back.label, a.label);
  const auto other = Geometry::build(PolarKind::hyperbolic, 3, 2);
  std::stringstream io2;
  write_ekr_json(io2, g, a);
  EXPECT_THROW(read_ekr_json(io2, other), std::invalid_argument);
}
