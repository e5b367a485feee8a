#include <gtest/gtest.h>

#include <stdexcept>

#include "polar_ekr/count.hpp"
#include "polar_ekr/flag.hpp"

using namespace polar;

namespace {

const Geometry& w52() {
  static const Geometry g = Geometry::build(PolarKind::symplectic, 3, 2);
  return g;
}

std::vector<FlagType> all_types(int n) {
  std::vector<FlagType> out;
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> dims;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) dims.push_back(i + 1);
    out.emplace_back(dims, n);
  }
  return out;
}

}  // namespace

TEST(FlagType, ParseAndValidate) {
  EXPECT_EQ(FlagType::parse("all", 3).dims(), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(FlagType::parse("3,1", 3).str(), "1,3");
  EXPECT_THROW(FlagType::parse("0", 3), std::invalid_argument);
  EXPECT_THROW(FlagType::parse("4", 3), std::invalid_argument);
  EXPECT_THROW(FlagType::parse("1,x", 3), std::invalid_argument);
  EXPECT_THROW(FlagType({}, 3), std::invalid_argument);
  EXPECT_TRUE(FlagType::chambers(3).is_chamber_type());
}

TEST(Flag, FamilySizes) {
  const auto& g = w52();
  EXPECT_EQ(FlagFamily(g, FlagType::chambers(3)).size(), 2835u);
  EXPECT_EQ(FlagFamily(g, FlagType::single(1, 3)).size(), 63u);
  EXPECT_EQ(FlagFamily(g, FlagType({1, 3}, 3)).size(), 945u);
  const Params p = params_of(g.space());
  for (const auto& t : all_types(3)) EXPECT_EQ(flag_count(t, p).value, FlagFamily(g, t).size()) << t.str();
}

TEST(Flag, CanonicalOrderAndLookup) {
  const auto& g = w52();
  const FlagFamily fam(g, FlagType::chambers(3));
  for (FlagIndex i = 0; i < fam.size(); ++i) {
    const auto f = fam.flag(i);
    ASSERT_TRUE(is_flag(g, fam.type(), f));
    EXPECT_EQ(fam.index_of(f), i);
    if (i > 0) {
      const auto prev = fam.flag(i - 1);
      EXPECT_TRUE(std::lexicographical_compare(prev.rbegin(), prev.rend(), f.rbegin(), f.rend()));
    }
  }
  for (SubspaceId top = 0; top < 135; ++top) {
    const auto [lo, hi] = fam.top_range(top);
    EXPECT_EQ(hi - lo, 21u);
    for (FlagIndex i = lo; i < hi; ++i) EXPECT_EQ(fam.part(i, 3), top);
  }
  EXPECT_FALSE(fam.index_of(std::vector<SubspaceId>{0, 0}).has_value());
}

TEST(Flag, OppositionOfPoints) {
  const auto& g = w52();
  for (SubspaceId p = 0; p < 63; ++p) {
    EXPECT_FALSE(g.opposite(1, p, p));
    EXPECT_EQ(g.opposites(1, p).size(), 32u);
  }
}

TEST(Flag, OppositionMatchesPerpMeet) {
  const auto& g = w52();
  const auto& sp = g.space();
  const Field& f = sp.field();
  for (int s = 1; s <= 3; ++s) {
    const auto& all = g.subspaces(s);
    for (std::size_t a = 0; a < all.size(); a += 3) {
      const auto ap = perp(sp, all[a]);
      for (std::size_t b = 0; b < all.size(); b += 2) {
        const bool by_meet = meet(f, ap, all[b]).rank == 0;
        ASSERT_EQ(g.opposite(s, static_cast<SubspaceId>(a), static_cast<SubspaceId>(b)), by_meet);
        ASSERT_EQ(g.opposite(s, static_cast<SubspaceId>(b), static_cast<SubspaceId>(a)), by_meet);
      }
    }
  }
}

TEST(Flag, ChamberOppositesAndBlowDown) {
  const auto& g = w52();
  const FlagFamily ch(g, FlagType::chambers(3));
  const auto types = all_types(3);
  for (FlagIndex a = 0; a < ch.size(); ++a) {
    int opposite = 0;
    const auto ca = ch.flag(a);
    for (FlagIndex b = 0; b < ch.size(); ++b) {
      const auto cb = ch.flag(b);
      if (!is_opposite(g, ch.type(), ca, cb)) continue;
      ++opposite;
      if (a % 97 == 0)
        for (const auto& t : types)
          ASSERT_TRUE(is_opposite(g, t, restrict_flag(ch.type(), ca, t), restrict_flag(ch.type(), cb, t)));
    }
    ASSERT_EQ(opposite, 512);
  }
  EXPECT_FALSE(is_opposite(g, ch.type(), ch.flag(0), ch.flag(0)));
  EXPECT_THROW(is_opposite(g, ch.type(), ch.flag(0), std::vector<SubspaceId>{0}), std::invalid_argument);
}

TEST(Flag, ChambersThroughExamples) {
  const auto& g = w52();
  const std::vector<SubspaceId> point{0};
  EXPECT_EQ(chambers_through(g, FlagType::single(1, 3), point).size(), 45u);
  const SubspaceId gen = g.cofaces(1, 0, 3).front();
  const std::vector<SubspaceId> pg{0, gen};
  EXPECT_EQ(chambers_through(g, FlagType({1, 3}, 3), pg).size(), 3u);
  const FlagFamily ch(g, FlagType::chambers(3));
  const auto c = ch.flag(100);
  const auto through = chambers_through(g, ch.type(), c);
  ASSERT_EQ(through.size(), 1u);
  EXPECT_TRUE(std::equal(c.begin(), c.end(), through[0].begin()));
}

TEST(Flag, ChambersThroughMatchesClosedFormExhaustively) {
  const auto& g = w52();
  const Params p = params_of(g.space());
  const FlagFamily ch(g, FlagType::chambers(3));
  for (const auto& t : all_types(3)) {
    const FlagFamily fam(g, t);
    const auto expected = chambers_through_flag(t, p).value;
    std::vector<std::size_t> by_scan(fam.size(), 0);
    for (FlagIndex c = 0; c < ch.size(); ++c) ++by_scan[*fam.index_of(restrict_flag(ch.type(), ch.flag(c), t))];
    for (FlagIndex i = 0; i < fam.size(); ++i) {
      const auto through = chambers_through(g, t, fam.flag(i));
      ASSERT_EQ(expected, through.size()) << t.str();
      ASSERT_EQ(by_scan[i], through.size());
      for (const auto& c : through) ASSERT_TRUE(ch.index_of(c).has_value());
    }
  }
}

TEST(Flag, GeometryLookups) {
  const auto& g = w52();
  for (int s = 1; s <= 3; ++s)
    for (const auto& x : g.subspaces(s)) EXPECT_EQ(g.id_of(x), x.id);
  EXPECT_FALSE(g.find(full_subspace(6)).has_value());
  EXPECT_THROW(g.id_of(full_subspace(6)), std::invalid_argument);
  EXPECT_THROW(g.subspaces(4), std::invalid_argument);
  EXPECT_EQ(g.faces(3, 0, 1).size(), 7u);
  EXPECT_EQ(g.faces(3, 0, 2).size(), 7u);
  EXPECT_EQ(g.cofaces(1, 0, 3).size(), 15u);
  EXPECT_EQ(g.cofaces(2, 0, 3).size(), 3u);
}
