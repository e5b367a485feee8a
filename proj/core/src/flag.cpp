#include "polar_ekr/flag.hpp"

#include <algorithm>
#include <stdexcept>

namespace polar {

namespace {

constexpr std::size_t kMaxOppositionTable = 40000;

}  // namespace

Geometry::Geometry(PolarSpace space) : space_(std::move(space)) {
  const int n = space_.rank();
  const Field& f = space_.field();
  levels_.resize(n + 1);
  for (int s = 1; s <= n; ++s) {
    Level& lv = levels_[s];
    lv.items = s == 1 ? space_.points() : extend_subspaces(space_, levels_[s - 1].items);
    lv.index.reserve(lv.items.size());
    for (const Subspace& x : lv.items) lv.index.emplace(x.key(), x.id);
    lv.faces.resize(s);
    lv.cofaces.resize(n + 1);
    lv.perp_eq.reserve(lv.items.size() * s * space_.dim());
    for (const Subspace& x : lv.items) {
      const GfMatrix eq = space_.form().perp_equations(f, x);
      lv.perp_eq.insert(lv.perp_eq.end(), eq.data.begin(), eq.data.end());
    }
  }
  for (int s = 2; s <= n; ++s) {
    Level& lv = levels_[s];
    for (int t = 1; t < s; ++t) {
      auto& table = lv.faces[t];
      table.resize(lv.items.size());
      auto& co = levels_[t].cofaces[s];
      co.resize(levels_[t].items.size());
      for (const Subspace& x : lv.items) {
        auto& ids = table[x.id];
        for (const Subspace& y : subspaces_of(f, x, t)) ids.push_back(levels_[t].index.at(y.key()));
        std::sort(ids.begin(), ids.end());
        for (SubspaceId y : ids) co[y].push_back(x.id);
      }
    }
  }
}

int Geometry::check(int s) const {
  if (s < 1 || s > rank())
    throw std::invalid_argument("dimension " + std::to_string(s) + " outside [1, " + std::to_string(rank()) + "]");
  return s;
}

std::optional<SubspaceId> Geometry::find(const Subspace& s) const {
  if (s.rank < 1 || s.rank > rank() || s.dim != space_.dim()) return std::nullopt;
  const auto& index = levels_[s.rank].index;
  const auto it = index.find(s.key());
  if (it == index.end()) return std::nullopt;
  return it->second;
}

SubspaceId Geometry::id_of(const Subspace& s) const {
  const auto id = find(s);
  if (!id) throw std::invalid_argument("id_of: not a totally singular subspace of " + space_.name());
  return *id;
}

const std::vector<SubspaceId>& Geometry::faces(int s, SubspaceId id, int t) const {
  check(s);
  check(t);
  if (t >= s) throw std::invalid_argument("faces: need t < s");
  return levels_[s].faces[t].at(id);
}

const std::vector<SubspaceId>& Geometry::cofaces(int t, SubspaceId id, int s) const {
  check(s);
  check(t);
  if (t >= s) throw std::invalid_argument("cofaces: need t < s");
  return levels_[t].cofaces[s].at(id);
}

bool Geometry::incident(int t, SubspaceId small, int s, SubspaceId big) const {
  if (t == s) return small == big;
  if (t > s) return false;
  const auto& f = faces(s, big, t);
  return std::binary_search(f.begin(), f.end(), small);
}

int Geometry::pairing_rank_ids(int m, SubspaceId a, int s, SubspaceId b) const {
  const Field& f = space_.field();
  const int d = space_.dim();
  const Subspace& x = levels_[m].items[a];
  const Elem* eq = levels_[s].perp_eq.data() + static_cast<std::size_t>(b) * s * d;
  GfMatrix pm(m, s);
  for (int i = 0; i < m; ++i) {
    const auto row = x.row(i);
    for (int j = 0; j < s; ++j) {
      Elem acc = 0;
      const Elem* e = eq + static_cast<std::size_t>(j) * d;
      for (int c = 0; c < d; ++c)
        if (row[c] != 0 && e[c] != 0) acc = f.add(acc, f.mul(row[c], e[c]));
      pm.at(i, j) = acc;
    }
  }
  return gf_rank(f, std::move(pm));
}

bool Geometry::meets_perp_trivially(int m, SubspaceId a, int s, SubspaceId b) const {
  check(m);
  check(s);
  return pairing_rank_ids(m, a, s, b) == m;
}

void Geometry::build_opposition(int s) const {
  Level& lv = levels_[s];
  std::call_once(*lv.opp_once, [&] {
    const std::size_t n = lv.items.size();
    if (n > kMaxOppositionTable)
      throw std::length_error("opposition table for " + std::to_string(n) + " subspaces exceeds the limit");
    const std::size_t words = (n + 63) / 64;
    lv.opp_bits.assign(n * words, 0);
    lv.opp_lists.assign(n, {});
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        if (pairing_rank_ids(s, static_cast<SubspaceId>(a), s, static_cast<SubspaceId>(b)) != s) continue;
        lv.opp_bits[a * words + b / 64] |= 1ULL << (b % 64);
        lv.opp_bits[b * words + a / 64] |= 1ULL << (a % 64);
      }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (lv.opp_bits[a * words + b / 64] >> (b % 64) & 1ULL) lv.opp_lists[a].push_back(static_cast<SubspaceId>(b));
  });
}

bool Geometry::opposite(int s, SubspaceId a, SubspaceId b) const {
  check(s);
  build_opposition(s);
  const Level& lv = levels_[s];
  const std::size_t words = (lv.items.size() + 63) / 64;
  return lv.opp_bits[a * words + b / 64] >> (b % 64) & 1ULL;
}

const std::vector<SubspaceId>& Geometry::opposites(int s, SubspaceId id) const {
  check(s);
  build_opposition(s);
  return levels_[s].opp_lists.at(id);
}

// ---------------------------------------------------------------------------

namespace {

bool top_first_less(std::span<const SubspaceId> a, std::span<const SubspaceId> b) {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

}  // namespace

FlagFamily::FlagFamily(const Geometry& g, FlagType type) : type_(std::move(type)) {
  if (type_.rank() != g.rank()) throw std::invalid_argument("FlagFamily: type rank differs from the space rank");
  const auto& d = type_.dims();
  const int w = width();
  std::vector<SubspaceId> current(w);
  const std::size_t tops = g.count(d.back());
  top_begin_.assign(tops + 1, 0);

  // descend from the top part; face lists are sorted so output is canonical
  auto recurse = [&](auto&& self, int pos) -> void {
    if (pos < 0) {
      parts_.insert(parts_.end(), current.begin(), current.end());
      return;
    }
    for (SubspaceId id : g.faces(d[pos + 1], current[pos + 1], d[pos])) {
      current[pos] = id;
      self(self, pos - 1);
    }
  };
  for (SubspaceId top = 0; top < tops; ++top) {
    top_begin_[top] = static_cast<FlagIndex>(size());
    current[w - 1] = top;
    recurse(recurse, w - 2);
  }
  top_begin_[tops] = static_cast<FlagIndex>(size());
}

SubspaceId FlagFamily::part(FlagIndex i, int s) const {
  const int pos = type_.position(s);
  if (pos < 0) throw std::invalid_argument("FlagFamily::part: dimension not in type");
  return flag(i)[pos];
}

std::optional<FlagIndex> FlagFamily::index_of(std::span<const SubspaceId> parts) const {
  if (static_cast<int>(parts.size()) != width()) return std::nullopt;
  const SubspaceId top = parts.back();
  if (top + 1 >= top_begin_.size()) return std::nullopt;
  FlagIndex lo = top_begin_[top];
  FlagIndex hi = top_begin_[top + 1];
  while (lo < hi) {
    const FlagIndex mid = lo + (hi - lo) / 2;
    if (top_first_less(flag(mid), parts)) lo = mid + 1;
    else hi = mid;
  }
  if (lo < top_begin_[top + 1] && std::equal(parts.begin(), parts.end(), flag(lo).begin())) return lo;
  return std::nullopt;
}

std::pair<FlagIndex, FlagIndex> FlagFamily::top_range(SubspaceId top) const {
  return {top_begin_.at(top), top_begin_.at(top + 1)};
}

bool is_flag(const Geometry& g, const FlagType& type, std::span<const SubspaceId> parts) {
  const auto& d = type.dims();
  if (parts.size() != d.size()) return false;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (parts[i] >= g.count(d[i])) return false;
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    if (!g.incident(d[i], parts[i], d[i + 1], parts[i + 1])) return false;
  return true;
}

bool is_opposite(const Geometry& g, const FlagType& type, std::span<const SubspaceId> a,
                 std::span<const SubspaceId> b) {
  const auto& d = type.dims();
  if (a.size() != d.size() || b.size() != d.size()) throw std::invalid_argument("is_opposite: type mismatch");
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!g.opposite(d[i], a[i], b[i])) return false;
  return true;
}

std::vector<std::vector<SubspaceId>> chambers_through(const Geometry& g, const FlagType& type,
                                                      std::span<const SubspaceId> parts) {
  if (!is_flag(g, type, parts)) throw std::invalid_argument("chambers_through: not a flag of the given type");
  const int n = g.rank();
  // fixed[k] = required id at dimension k, or none
  std::vector<std::optional<SubspaceId>> fixed(n + 1);
  for (int i = 0; i < type.size(); ++i) fixed[type.dims()[i]] = parts[i];
  // below[k] = the largest fixed dimension <= k, which C_k must contain
  std::vector<int> below(n + 1, 0);
  for (int k = 1; k <= n; ++k) below[k] = fixed[k] ? k : below[k - 1];

  std::vector<std::vector<SubspaceId>> out;
  std::vector<SubspaceId> c(n);
  auto ok = [&](int k, SubspaceId id) {
    const int b = below[k];
    return b == 0 || g.incident(b, *fixed[b], k, id);
  };
  auto recurse = [&](auto&& self, int k) -> void {
    if (k == 0) {
      out.push_back(c);
      return;
    }
    for (SubspaceId id : g.faces(k + 1, c[k], k)) {
      if (fixed[k] && id != *fixed[k]) continue;
      if (!ok(k, id)) continue;
      c[k - 1] = id;
      self(self, k - 1);
    }
  };
  std::vector<SubspaceId> tops;
  if (fixed[n]) tops.push_back(*fixed[n]);
  else tops = g.cofaces(type.back(), parts.back(), n);
  for (SubspaceId top : tops) {
    c[n - 1] = top;
    recurse(recurse, n - 1);
  }
  return out;
}

std::vector<SubspaceId> restrict_flag(const FlagType& type, std::span<const SubspaceId> parts, const FlagType& sub) {
  std::vector<SubspaceId> out;
  out.reserve(sub.size());
  for (int s : sub.dims()) {
    const int pos = type.position(s);
    if (pos < 0) throw std::invalid_argument("restrict_flag: " + sub.str() + " is not a subtype of " + type.str());
    out.push_back(parts[pos]);
  }
  return out;
}

}  // namespace polar
