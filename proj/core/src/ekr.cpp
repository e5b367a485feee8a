#include "polar_ekr/ekr.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"
#include "polar_ekr/count.hpp"

namespace polar {

namespace {

std::vector<FlagIndex> as_members(const std::vector<SubspaceId>& ids) {
  std::vector<FlagIndex> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t to_size(const mpz_class& v) {
  if (!v.fits_ulong_p()) throw std::overflow_error("count does not fit in 64 bits");
  return v.get_ui();
}

std::int64_t to_i64(const mpz_class& v) {
  if (!v.fits_slong_p()) throw std::overflow_error("count does not fit in 64 bits");
  return v.get_si();
}

}  // namespace

bool EKRSet::contains(FlagIndex f) const { return std::binary_search(members.begin(), members.end(), f); }

std::optional<ExampleFamily> parse_family(std::string_view name) {
  if (name == "a") return ExampleFamily::a;
  if (name == "b") return ExampleFamily::b;
  if (name == "c") return ExampleFamily::c;
  if (name == "d") return ExampleFamily::d;
  return std::nullopt;
}

std::pair<std::vector<SubspaceId>, std::vector<SubspaceId>> parity_classes(const Geometry& g,
                                                                           std::span<const SubspaceId> generators,
                                                                           SubspaceId ref) {
  const int n = g.rank();
  const Field& f = g.space().field();
  const Subspace& r = g.subspace(n, ref);
  std::pair<std::vector<SubspaceId>, std::vector<SubspaceId>> out;
  for (auto id : generators) {
    const int d = meet(f, r, g.subspace(n, id)).rank;
    ((d - n) % 2 == 0 ? out.first : out.second).push_back(id);
  }
  return out;
}

HyperbolicSection hyperbolic_section(const Geometry& g) {
  const PolarSpace& sp = g.space();
  const Field& f = sp.field();
  const int d = sp.dim();
  const int q = f.q();
  std::vector<Elem> a(d), b(d);
  std::uint64_t total = 1;
  for (int i = 0; i < d; ++i) total *= q;
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = d - 1; i >= 0; --i) {
      a[i] = static_cast<Elem>(c % q);
      c /= q;
    }
    b = a;
    normalize(f, b);
    if (a != b) continue;
    const Subspace h = hyperplane_from_functional(f, a);
    const HyperplaneSection sec = hyperplane_section(sp, h);
    if (sec.degenerate || sec.kind != PolarKind::hyperbolic) continue;
    HyperbolicSection out{h, {}};
    for (SubspaceId id = 0; id < g.count(g.rank()); ++id)
      if (contains(f, h, g.subspace(g.rank(), id))) out.generators.push_back(id);
    return out;
  }
  throw std::invalid_argument("no hyperbolic hyperplane section in " + sp.name());
}

EKRSet build_example(const Geometry& g, ExampleFamily family, std::uint32_t base) {
  const int n = g.rank();
  const PolarKind kind = g.space().kind();
  const std::string space = g.space().name();
  auto need = [](bool ok, const std::string& why) {
    if (!ok) throw std::invalid_argument(why);
  };
  switch (family) {
    case ExampleFamily::a: {
      need(base < g.count(n), "example a: generator id out of range");
      const std::vector<SubspaceId> pts = n == 1 ? std::vector<SubspaceId>{base} : g.faces(n, base, 1);
      return {FlagType::single(1, n), as_members(pts), "example a: points of generator " + std::to_string(base)};
    }
    case ExampleFamily::b: {
      need(base < g.count(1), "example b: point id out of range");
      const std::vector<SubspaceId> gens = n == 1 ? std::vector<SubspaceId>{base} : g.cofaces(1, base, n);
      return {FlagType::single(n, n), as_members(gens), "example b: generators through point " + std::to_string(base)};
    }
    case ExampleFamily::c: {
      need(kind == PolarKind::hyperbolic && n % 2 == 1, "example c needs a hyperbolic space of odd rank, not " + space);
      need(base < g.count(n), "example c: generator id out of range");
      std::vector<SubspaceId> all(g.count(n));
      for (SubspaceId i = 0; i < all.size(); ++i) all[i] = i;
      return {FlagType::single(n, n), as_members(parity_classes(g, all, base).first),
              "example c: generator class of " + std::to_string(base)};
    }
    case ExampleFamily::d: {
      need(kind != PolarKind::symplectic,
           "example d for symplectic spaces of even q goes through the parabolic model; build it on Q(2n,q)");
      need(kind == PolarKind::parabolic, "example d needs a parabolic space, not " + space);
      const auto sec = hyperbolic_section(g);
      need(base < sec.generators.size(), "example d: section generator index out of range");
      return {FlagType::single(n, n), as_members(parity_classes(g, sec.generators, sec.generators[base]).first),
              "example d: hyperbolic section class of " + std::to_string(sec.generators[base])};
    }
  }
  throw std::invalid_argument("unknown example family");
}

EKRSet blow_up(const Geometry& g, const EKRSet& f, const FlagType& target) {
  for (int s : f.type.dims())
    if (!target.contains(s)) throw std::invalid_argument("blow_up: target type must contain " + f.type.str());
  const FlagFamily fam(g, target);
  const FlagFamily base(g, f.type);
  EKRSet out{target, {}, "blow-up of " + f.label};
  std::vector<char> in(base.size(), 0);
  for (auto m : f.members) in.at(m) = 1;
  for (FlagIndex i = 0; i < fam.size(); ++i) {
    const auto sub = restrict_flag(target, fam.flag(i), f.type);
    if (in[*base.index_of(sub)]) out.members.push_back(i);
  }
  return out;
}

EKRCheck verify_ekr(const OppositionGraph& graph, std::span<const FlagIndex> members) {
  std::vector<char> in(graph.vertex_count(), 0);
  for (auto m : members) {
    if (m >= graph.vertex_count()) throw std::invalid_argument("verify_ekr: member out of range");
    in[m] = 1;
  }
  for (auto m : members)
    for (auto u : graph.neighbors(m))
      if (in[u]) return {false, std::make_pair(std::min(m, u), std::max(m, u))};
  return {};
}

EKRCheck verify_ekr(const Geometry& g, const EKRSet& f) {
  const FlagFamily fam(g, f.type);
  for (std::size_t i = 0; i < f.members.size(); ++i)
    for (std::size_t j = i + 1; j < f.members.size(); ++j)
      if (is_opposite(g, f.type, fam.flag(f.members[i]), fam.flag(f.members[j])))
        return {false, std::make_pair(f.members[i], f.members[j])};
  return {};
}

Sharpness ratio_sharpness(const Geometry& g, const OppositionGraph& graph, const EKRSet& f) {
  const Params p = params_of(g.space());
  Sharpness out;
  out.size = f.size();
  out.bound = ratio_bound(f.type, p).value;
  out.sharp = out.bound == static_cast<unsigned long>(out.size);
  const auto n = static_cast<__int128>(graph.vertex_count());
  const auto lambda = static_cast<__int128>(-to_i64(lambda_flags(f.type, p).value));
  const auto d = static_cast<__int128>(*graph.regular_degree());
  const auto size = static_cast<__int128>(f.size());
  std::vector<__int128> neighbours_in(graph.vertex_count(), 0);
  std::vector<char> in(graph.vertex_count(), 0);
  for (auto m : f.members) {
    in.at(m) = 1;
    for (auto u : graph.neighbors(m)) ++neighbours_in[u];
  }
  out.certificate = true;
  for (std::size_t v = 0; v < graph.vertex_count() && out.certificate; ++v)
    out.certificate = n * neighbours_in[v] - n * lambda * in[v] - size * (d - lambda) == 0;
  return out;
}

XYZ xyz_chambers(const Geometry& g, const EKRSet& f, int s, SubspaceId probe) {
  if (!f.type.is_chamber_type()) throw std::invalid_argument("xyz_chambers: needs a set of chambers");
  const Params p = params_of(g.space());
  const FlagFamily ch(g, f.type);
  XYZ out;
  for (auto c : f.members) {
    const SubspaceId cs = ch.part(c, s);
    if (cs == probe)
      ++out.x;
    else if (g.opposite(s, probe, cs))
      ++out.y;
    else
      ++out.z;
  }
  const std::int64_t full = to_i64(chambers_through_flag(FlagType::single(s, p.n), p).value);
  const std::int64_t lambda = to_i64(lambda_subspace(s, p).value);
  out.heavy = static_cast<std::int64_t>(out.x) == full;
  out.identity = static_cast<std::int64_t>(out.y) == lambda * (full - static_cast<std::int64_t>(out.x));
  return out;
}

XYZ xyz_subspaces(const Geometry& g, const EKRSet& f, int m, SubspaceId probe) {
  if (f.type.size() != 1) throw std::invalid_argument("xyz_subspaces: needs a set of s-spaces");
  const int s = f.type.front();
  if (m < 1 || m >= s) throw std::invalid_argument("xyz_subspaces: needs 1 <= m < s");
  const Params p = params_of(g.space());
  XYZ out;
  for (auto t : f.members) {
    if (g.incident(m, probe, s, t))
      ++out.x;
    else if (g.meets_perp_trivially(m, probe, s, t))
      ++out.y;
    else
      ++out.z;
  }
  const mpz_class full = phi(m, s, p).value;
  const mpz_class lambda = lambda_subspace(s, p).value;
  const mpz_class power = heavy_power(m, s, p).value;
  out.heavy = full == static_cast<unsigned long>(out.x);
  // Y q^{deg Phi} = -lambda_s (Phi - X)
  out.identity = mpz_class(power * static_cast<unsigned long>(out.y)) == lambda * (full - static_cast<unsigned long>(out.x));
  return out;
}

std::vector<std::size_t> weights(const Geometry& g, const EKRSet& f, int s) {
  std::vector<std::size_t> w(g.count(s), 0);
  if (f.type.contains(s)) {
    const FlagFamily fam(g, f.type);
    for (auto m : f.members) ++w[fam.part(m, s)];
  } else if (f.type.size() == 1 && s < f.type.front()) {
    for (auto t : f.members)
      for (auto x : g.faces(f.type.front(), t, s)) ++w[x];
  } else {
    throw std::invalid_argument("weights: dimension not covered by the flag type");
  }
  return w;
}

std::vector<SubspaceId> heavy_subspaces(const Geometry& g, const EKRSet& f, int s) {
  const Params p = params_of(g.space());
  std::size_t full = 0;
  if (f.type.contains(s)) {
    const mpz_class all = flag_count(f.type, p).value, here = phi(0, s, p).value;
    full = to_size(all / here);
  } else {
    full = to_size(phi(s, f.type.front(), p).value);
  }
  const auto w = weights(g, f, s);
  std::vector<SubspaceId> out;
  for (SubspaceId i = 0; i < w.size(); ++i)
    if (w[i] == full) out.push_back(i);
  return out;
}

void write_ekr_json(std::ostream& out, const Geometry& g, const EKRSet& f) {
  const Params p = params_of(g.space());
  nlohmann::ordered_json j;
  j["schema"] = "polar-ekr/ekr-set/1";
  j["space"] = g.space().name();
  j["kind"] = std::string(to_string(g.space().kind()));
  j["n"] = p.n;
  j["twice_e"] = p.twice_e;
  j["q"] = p.q;
  j["J"] = f.type.str();
  j["label"] = f.label;
  j["member_ids"] = f.members;
  out << j.dump() << '\n';
}

EKRSet read_ekr_json(std::istream& in, const Geometry& g) {
  const auto j = nlohmann::json::parse(in);
  if (j.at("schema") != "polar-ekr/ekr-set/1") throw std::invalid_argument("read_ekr_json: unknown schema");
  const Params p = params_of(g.space());
  if (j.at("kind") != std::string(to_string(g.space().kind())) || j.at("n") != p.n || j.at("q") != p.q)
    throw std::invalid_argument("read_ekr_json: set belongs to a different space");
  EKRSet f{FlagType::parse(j.at("J").get<std::string>(), p.n), j.at("member_ids").get<std::vector<FlagIndex>>(),
           j.at("label")};
  if (!std::is_sorted(f.members.begin(), f.members.end()) ||
      std::adjacent_find(f.members.begin(), f.members.end()) != f.members.end())
    throw std::invalid_argument("read_ekr_json: member ids must be sorted and distinct");
  const FlagFamily fam(g, f.type);
  if (!f.members.empty() && f.members.back() >= fam.size()) throw std::invalid_argument("read_ekr_json: member id out of range");
  return f;
}

}  // namespace polar
