#include "suites.hpp"

#include <chrono>
#include <map>
#include <set>

#include "polar_ekr/antidesign.hpp"
#include "polar_ekr/count.hpp"

namespace polar::cli {

namespace {

FlagType type_of(const OppositionGraph& graph) { return FlagType::parse(graph.info().type, graph.info().n); }

std::vector<FlagType> all_types(int n, int max_dim) {
  std::vector<FlagType> out;
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> dims;
    for (int s = 1; s <= n; ++s)
      if (mask >> (s - 1) & 1) dims.push_back(s);
    if (dims.back() <= max_dim) out.emplace_back(dims, n);
  }
  std::sort(out.begin(), out.end(), [](const FlagType& a, const FlagType& b) {
    return a.size() != b.size() ? a.size() < b.size() : a.dims() < b.dims();
  });
  return out;
}

std::size_t maximal_chains(const Geometry& g, int s, SubspaceId id) {
  if (s == 1) return 1;
  std::size_t total = 0;
  for (auto face : g.faces(s, id, s - 1)) total += maximal_chains(g, s - 1, face);
  return total;
}

Json type_json(const FlagType& t) { return Json(t.dims()); }

// Distinct values of a pairing over a range of antidesigns.
struct PairingTally {
  std::set<mpq_class> values;
  std::set<mpq_class> predicted;
  std::size_t count = 0;
  bool ok = true;

  void add(const Pairing& p) {
    values.insert(p.actual);
    predicted.insert(p.predicted);
    ok = ok && p.equal;
    ++count;
  }
  Json json() const {
    Json v = Json::array(), pr = Json::array();
    for (const auto& x : values) v.push_back(number(x));
    for (const auto& x : predicted) pr.push_back(number(x));
    return Json{{"count", count}, {"values", v}, {"predicted", pr}, {"ok", ok}};
  }
};

}  // namespace

Json number(const mpz_class& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Json number(const mpq_class& x) {
  if (x.get_den() == 1) return number(mpz_class(x.get_num()));
  return Json(x.get_str());
}

Json space_json(const Geometry& g) {
  const auto& sp = g.space();
  return Json{{"name", sp.name()},
              {"kind", std::string(to_string(sp.kind()))},
              {"n", sp.rank()},
              {"e", HalfInt{sp.twice_e()}.str()},
              {"q", sp.q()}};
}

Json header(const Geometry& g, const std::string& schema) {
  return Json{{"tool", "polar-ekr"},
              {"version", kVersion},
              {"schema", schema},
              {"ordering", kOrdering},
              {"space", space_json(g)}};
}

Json space_summary(const Geometry& g) {
  const Params p = params_of(g.space());
  const int n = g.rank();
  Json dims = Json::array();
  bool ok = true;
  for (int s = 1; s <= n; ++s) {
    const mpz_class closed = phi(0, s, p).value;
    const bool match = closed == g.count(s);
    ok = ok && match;
    dims.push_back(Json{{"dim", s}, {"count", g.count(s)}, {"closed_form", number(closed)}, {"match", match}});
  }
  const mpz_class chambers = flag_count(FlagType::chambers(n), p).value;
  return Json{{"points", g.count(1)},
              {"generators", g.count(n)},
              {"chambers", number(chambers)},
              {"ambient_dimension", g.space().dim()},
              {"subspaces", dims},
              {"tight_regime", p.tight_regime()},
              {"ok", ok}};
}

Json count_table(const Geometry& g, int max_dim) {
  const Params p = params_of(g.space());
  const Field& f = g.space().field();
  const int n = g.rank();
  max_dim = std::clamp(max_dim, 1, n);
  Json rows = Json::array();
  bool ok = true;
  auto row = [&](const char* formula, Json params, const mpz_class& closed, std::size_t enumerated) {
    const bool match = closed == enumerated;
    ok = ok && match;
    rows.push_back(Json{{"formula", formula},
                        {"params", std::move(params)},
                        {"closed_form", number(closed)},
                        {"enumerated", enumerated},
                        {"match", match}});
  };

  for (int s = 1; s <= max_dim; ++s) row("phi", Json{{"m", 0}, {"s", s}}, phi(0, s, p).value, g.count(s));
  for (int s = 1; s <= max_dim; ++s)
    for (int m = 0; m <= s; ++m) {
      const std::size_t e = (m == 0 || m == s) ? 1 : g.faces(s, 0, m).size();
      row("gauss", Json{{"s", s}, {"m", m}}, gauss(s, m, p.q).value, e);
    }
  for (int s = 1; s <= max_dim; ++s) row("z", Json{{"s", s}}, z(s, p.q).value, maximal_chains(g, s, 0));
  for (int m = 1; m <= max_dim; ++m)
    for (int s = m + 1; s <= max_dim; ++s)
      row("phi", Json{{"m", m}, {"s", s}}, phi(m, s, p).value, g.cofaces(m, 0, s).size());

  for (int m = 1; m <= max_dim; ++m) {
    const Subspace& u = g.subspace(m, 0);
    const Subspace up = perp(g.space(), u);
    for (int t = 1; t <= max_dim; ++t) {
      std::map<std::pair<int, int>, std::size_t> tally;
      for (const auto& s : g.subspaces(t)) {
        const int j = meet(f, s, u).rank;
        ++tally[{j, meet(f, s, up).rank - j}];
      }
      for (int j = 0; j <= m; ++j)
        for (int l = 0; l <= t - j; ++l) {
          const int k = t - j - l;
          if (k > m - j || l > n - m) continue;
          const auto it = tally.find({j, l});
          const std::size_t e = it == tally.end() ? 0 : it->second;
          if (it != tally.end()) tally.erase(it);
          row("count_configuration", Json{{"m", m}, {"j", j}, {"k", k}, {"l", l}},
              count_configuration(m, j, k, l, p).value, e);
        }
      // every t-space must fall into one of the configurations above
      std::size_t stray = 0;
      for (const auto& [key, c] : tally) stray += c;
      row("count_configuration_cover", Json{{"m", m}, {"t", t}}, 0, stray);
    }
  }

  for (const auto& type : all_types(n, n)) {
    if (type.back() > max_dim && !type.is_chamber_type()) continue;
    const FlagFamily fam(g, type);
    row("flag_count", Json{{"J", type_json(type)}}, flag_count(type, p).value, fam.size());
    if (type.back() > max_dim) continue;
    row("chambers_through_flag", Json{{"J", type_json(type)}}, chambers_through_flag(type, p).value,
        chambers_through(g, type, fam.flag(0)).size());
  }
  return Json{{"max_dim", max_dim}, {"rows", rows}, {"ok", ok}};
}

Json spectrum_section(const Geometry& g, OppositionGraph& graph) {
  const Params p = params_of(g.space());
  const FlagType type = type_of(graph);
  Spectrum spec = certified_spectrum(graph);
  graph.attach_spectrum(spec);
  Json eig = Json::array();
  for (const auto& e : spec) eig.push_back(Json{{"value", e.value}, {"multiplicity", e.multiplicity}});
  const std::int64_t lmin = spec.front().value;
  const std::size_t degree = *graph.regular_degree();
  const mpz_class d_closed = opposition_degree(type, p).value;
  Json out{{"J", type_json(type)},
           {"vertices", graph.vertex_count()},
           {"degree", degree},
           {"degree_closed_form", number(d_closed)},
           {"eigenvalues", eig},
           {"lambda_min", lmin}};
  bool ok = d_closed == degree;
  if (p.tight_regime()) {
    const mpz_class l_closed = -lambda_flags(type, p).value;
    const mpz_class factor = qpow(p.q, HalfInt::whole(p.n - 1) + p.e());
    const bool lm = l_closed == lmin;
    const bool dm = mpz_class(static_cast<unsigned long>(degree)) == -l_closed * factor;
    out["lambda_closed_form"] = number(l_closed);
    out["lambda_match"] = lm;
    out["degree_identity"] = dm;
    ok = ok && lm && dm;
  } else {
    out["lambda_closed_form"] = nullptr;
  }
  out["ok"] = ok;
  return out;
}

Json quotient_section(const Geometry& g, const OppositionGraph& chambers, const OppositionGraph& flags) {
  const auto r = quotient_relation_check(g, chambers, flags);
  return Json{{"J", type_json(r.type)},
              {"ell", r.ell.str()},
              {"factor", number(r.factor)},
              {"mismatches", r.mismatches},
              {"ok", r.holds}};
}

Json antidesign_section(const Geometry& g, const OppositionGraph& graph, bool rows) {
  const FlagType type = type_of(graph);
  const int n = g.rank();
  const Params p = params_of(g.space());
  const std::int64_t lambda = min_eigenvalue(g, graph);
  const IntBasis basis = eigenspace_basis(graph, lambda);

  std::optional<EKRSet> target;
  if (p.tight_regime()) {
    if (type.is_chamber_type())
      target = blow_up(g, build_example(g, ExampleFamily::a, 0), type);
    else if (type == FlagType::single(1, n))
      target = build_example(g, ExampleFamily::a, 0);
    else if (type == FlagType::single(n, n))
      target = build_example(g, ExampleFamily::b, 0);
  }

  Json list = Json::array();
  std::size_t vectors = 0, orth = 0, sums = 0, sums_checked = 0, pair_equal = 0;
  auto record = [&](const Antidesign& v, std::optional<bool> sum) {
    const bool o = orthogonal(v, basis);
    ++vectors;
    orth += o;
    if (sum) {
      ++sums_checked;
      sums += *sum;
    }
    std::optional<Pairing> pr;
    if (target) {
      pr = pairing(v, target->members);
      pair_equal += pr->equal;
    }
    if (!rows) return;
    Json r{{"constructor", v.constructor}, {"base_dim", v.base_dim}, {"base_id", v.base_id}, {"orthogonal", o}};
    r["sum_identity"] = sum ? Json(*sum) : Json(nullptr);
    r["pairing_actual"] = pr ? number(pr->actual) : Json(nullptr);
    r["pairing_predicted"] = pr ? number(pr->predicted) : Json(nullptr);
    list.push_back(std::move(r));
  };

  for (FlagIndex f = 0; f < graph.vertex_count(); ++f) record(chi(graph, f, lambda), std::nullopt);
  if (type.size() == 1) {
    const int s = type.front();
    for (int m = 1; m < s; ++m)
      for (SubspaceId id = 0; id < g.count(m); ++id)
        record(v_mspace(g, m, id, s), mspace_sum_holds(g, graph, m, id, s));
  } else if (type.is_chamber_type() && p.tight_regime()) {
    for (int s = 1; s <= n; ++s)
      for (SubspaceId id = 0; id < g.count(s); ++id)
        record(v_subspace(g, s, id), subspace_scaled_sum_holds(g, graph, s, id));
  }

  Json out{{"J", type_json(type)},
           {"lambda", lambda},
           {"eigenspace_dimension", basis.vectors.size()},
           {"vectors", vectors},
           {"orthogonal", orth},
           {"sum_identities", sums_checked},
           {"sum_identities_holding", sums}};
  if (target) {
    out["pairing_set"] = target->label;
    out["pairings_equal"] = pair_equal;
  }
  out["ok"] = orth == vectors && sums == sums_checked;
  if (rows) out["rows"] = std::move(list);
  return out;
}

Json intersection_section(const Geometry& g, const OppositionGraph& chambers, const OppositionGraph& generators) {
  const int n = g.rank();
  const std::int64_t lambda = min_eigenvalue(g, chambers);
  const std::int64_t lambda_n = min_eigenvalue(g, generators);
  Json out = Json::object();
  bool ok = true;
  for (auto fam : {ExampleFamily::a, ExampleFamily::b}) {
    const auto base = build_example(g, fam, 0);
    const auto f = blow_up(g, base, FlagType::chambers(n));
    Json part{{"size", f.size()}};
    PairingTally chis;
    for (FlagIndex c = 0; c < chambers.vertex_count(); ++c) chis.add(pairing(chi(chambers, c, lambda), f.members));
    part["chi"] = chis.json();
    ok = ok && chis.ok;
    for (int s = 1; s <= n; ++s) {
      PairingTally t;
      for (SubspaceId id = 0; id < g.count(s); ++id) t.add(pairing(v_subspace(g, s, id), f.members));
      part["v_subspace_" + std::to_string(s)] = t.json();
      ok = ok && t.ok;
    }
    if (fam == ExampleFamily::b) {
      PairingTally gchi;
      for (FlagIndex t = 0; t < generators.vertex_count(); ++t)
        gchi.add(pairing(chi(generators, t, lambda_n), base.members));
      part["generators_chi"] = gchi.json();
      ok = ok && gchi.ok;
      for (int m = 1; m < n; ++m) {
        PairingTally t;
        for (SubspaceId id = 0; id < g.count(m); ++id) t.add(pairing(v_mspace(g, m, id, n), base.members));
        part["generators_v_mspace_" + std::to_string(m)] = t.json();
        ok = ok && t.ok;
      }
    }
    out[fam == ExampleFamily::a ? "a" : "b"] = std::move(part);
  }
  out["ok"] = ok;
  return out;
}

std::optional<std::size_t> ratio_bound_of(const Geometry& g, const OppositionGraph& graph) {
  const auto d = graph.regular_degree();
  if (!d || graph.vertex_count() == 0) return std::nullopt;
  std::int64_t lambda = 0;
  try {
    lambda = min_eigenvalue(g, graph);
  } catch (const std::length_error&) {
    return std::nullopt;
  }
  const mpz_class num = mpz_class(static_cast<unsigned long>(graph.vertex_count())) * -lambda;
  const mpz_class den = mpz_class(static_cast<unsigned long>(*d)) - lambda;
  const mpz_class bound = num / den;
  return static_cast<std::size_t>(bound.get_ui());
}

Json search_section(const Geometry& g, const OppositionGraph& graph, const SearchOptions& options,
                    const std::optional<EKRSet>& seed, bool timings, bool witness) {
  const FlagType type = type_of(graph);
  SearchOptions opt = options;
  const auto bound = ratio_bound_of(g, graph);
  if (bound) opt.root_bound = *bound;
  if (seed) opt.seeds.push_back(seed->members);
  const auto r = max_independent_set(graph, opt);
  Json out{{"J", type_json(type)}, {"vertices", graph.vertex_count()}};
  out["ratio_bound"] = bound ? Json(*bound) : Json(nullptr);
  out["seed"] = seed ? Json{{"label", seed->label}, {"size", seed->size()}} : Json(nullptr);
  out["alpha"] = r.alpha;
  out["upper_bound"] = r.upper_bound;
  out["status"] = r.status;
  out["method"] = r.method;
  out["nodes"] = r.nodes;
  if (timings) out["seconds"] = r.seconds;
  if (bound) {
    out["ratio_sharp"] = r.proved() && r.alpha == *bound;
    out["below_ratio_bound"] = r.upper_bound < *bound;
  }
  if (type.is_chamber_type() && r.proved()) {
    const EKRSet w{type, r.witness, "witness"};
    const auto sc = structure_check(g, w, r.alpha);
    out["witness_structure"] =
        Json{{"blow_up", sc.is_blow_up}, {"s", sc.s}, {"base_size", sc.base.size()}, {"extremal_dimension", sc.extremal_dimension}};
  }
  if (opt.collect_limit > 0) out["maximum_sets_found"] = r.all_maximum.size();
  if (witness) out["witness"] = r.witness;
  out["ok"] = true;
  return out;
}

Json xyz_section(const Geometry& g, const EKRSet& f) {
  const Params p = params_of(g.space());
  Json out = Json::object();
  bool ok = true;
  for (int s = 1; s <= g.rank(); ++s) {
    const mpz_class full = chambers_through_flag(FlagType::single(s, g.rank()), p).value;
    std::size_t heavy = 0, identity = 0, heavy_ok = 0;
    for (SubspaceId id = 0; id < g.count(s); ++id) {
      const auto r = xyz_chambers(g, f, s, id);
      identity += r.identity;
      if (r.heavy) {
        ++heavy;
        heavy_ok += (full == r.x && r.y == 0);
      }
    }
    const bool sok = identity == g.count(s) && heavy_ok == heavy;
    ok = ok && sok;
    out[std::to_string(s)] = Json{{"probes", g.count(s)},
                                  {"identity_holds", identity},
                                  {"heavy", heavy},
                                  {"heavy_full_and_y_zero", heavy_ok},
                                  {"ok", sok}};
  }
  out["ok"] = ok;
  return out;
}

Json structure_section(const Geometry& g) {
  const int n = g.rank();
  const Params p = params_of(g.space());
  const auto alpha = ratio_bound(FlagType::chambers(n), p).value.get_ui();
  Json out = Json::object();
  bool ok = true;
  for (auto fam : {ExampleFamily::a, ExampleFamily::b}) {
    const auto base = build_example(g, fam, 0);
    const auto f = blow_up(g, base, FlagType::chambers(n));
    const auto sc = structure_check(g, f, alpha);
    const int expected = fam == ExampleFamily::a ? 1 : n;
    const bool match = sc.is_blow_up && sc.s == expected &&
                       std::vector<FlagIndex>(sc.base.begin(), sc.base.end()) == base.members;
    ok = ok && match;
    out[fam == ExampleFamily::a ? "a" : "b"] =
        Json{{"blow_up", sc.is_blow_up}, {"s", sc.s}, {"base_size", sc.base.size()}, {"base_matches", match}};
  }
  out["ok"] = ok;
  return out;
}

Json spinor_section(const Geometry& g) {
  const int n = g.rank();
  std::vector<SubspaceId> all(g.count(n));
  for (SubspaceId i = 0; i < all.size(); ++i) all[i] = i;
  const auto [same, other] = parity_classes(g, all, 0);
  const bool a = verify_ekr(g, EKRSet{FlagType::single(n, n), {same.begin(), same.end()}, ""}).ok;
  const bool b = verify_ekr(g, EKRSet{FlagType::single(n, n), {other.begin(), other.end()}, ""}).ok;
  const bool expect_ekr = n % 2 == 1;
  return Json{{"generators", all.size()},
              {"classes", {same.size(), other.size()}},
              {"pairwise_non_opposite", {a, b}},
              {"ok", same.size() == other.size() && (!expect_ekr || (a && b))}};
}

EKRSet example_for(const Geometry& g, ExampleFamily family, std::uint32_t base, const FlagType& type) {
  auto e = build_example(g, family, base);
  if (e.type == type) return e;
  if (!type.contains(e.type.front()))
    throw std::invalid_argument("the example consists of " + e.type.str() + "-flags, which J = " + type.str() +
                                " does not contain");
  return blow_up(g, e, type);
}

}  // namespace polar::cli
