#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "polar_ekr/antidesign.hpp"
#include "polar_ekr/count.hpp"
#include "suites.hpp"

using namespace polar;
using namespace polar::cli;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string kind = "symplectic";
  int n = 3;
  int q = 2;
  std::string J = "all";
  std::string output;
  std::string format = "json";
  int threads = 1;
  double budget = 1800.0;
  bool deterministic = false;

  // subcommand specific
  int dim = 1;
  int max_dim = 0;
  bool complement = false;
  bool attach_spectrum = false;
  bool summary_only = false;
  std::string example;
  std::uint32_t base = 0;
  std::string input;
  bool xyz = false;
  std::uint64_t node_limit = 0;
  std::size_t collect = 0;
  bool witness = false;
};

Geometry make_geometry(const Config& c) {
  const auto kind = parse_kind(c.kind);
  if (!kind) throw UsageError("unknown kind '" + c.kind + "'");
  try {
    return Geometry::build(*kind, c.n, c.q);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

FlagType make_type(const Config& c, int n) {
  try {
    return FlagType::parse(c.J, n);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

ExampleFamily make_family(const std::string& name) {
  const auto f = parse_family(name);
  if (!f) throw UsageError("unknown example '" + name + "' (expected a, b, c or d)");
  return *f;
}

EKRSet make_example(const Geometry& g, const Config& c, const FlagType& type) {
  try {
    return example_for(g, make_family(c.example), c.base, type);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

OppositionGraph make_graph(const Geometry& g, const FlagType& type, const Config& c) {
  return OppositionGraph::build(g, type, c.threads);
}

void emit(const Json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

int status_of(const Json& j) { return j.value("ok", true) ? kOk : kFailed; }

int cmd_space(const Config& c) {
  const auto g = make_geometry(c);
  if (c.format == "csv") {
    if (c.dim < 1 || c.dim > g.rank()) throw UsageError("--dim must lie in [1, n]");
    if (c.output.empty()) {
      write_subspaces_csv(std::cout, g.subspaces(c.dim));
    } else {
      std::ofstream out(c.output);
      write_subspaces_csv(out, g.subspaces(c.dim));
    }
    return kOk;
  }
  Json j = header(g, "polar-ekr/space/1");
  j.update(space_summary(g));
  emit(j, c.output);
  return status_of(j);
}

int cmd_graph(const Config& c) {
  const auto g = make_geometry(c);
  const auto type = make_type(c, g.rank());
  auto graph = make_graph(g, type, c);
  if (c.attach_spectrum) graph.attach_spectrum(certified_spectrum(graph));
  auto write = [&](std::ostream& out) {
    if (c.format == "dimacs")
      write_dimacs(out, graph, c.complement);
    else
      write_graph_json(out, graph);
  };
  if (c.output.empty()) {
    write(std::cout);
    return kOk;
  }
  std::ofstream out(c.output);
  if (!out) throw std::runtime_error("cannot write " + c.output);
  write(out);
  Json j = header(g, "polar-ekr/graph-summary/1");
  j["J"] = type.dims();
  j["vertices"] = graph.vertex_count();
  j["edges"] = graph.edge_count();
  j["degree"] = *graph.regular_degree();
  j["format"] = c.format;
  j["complement"] = c.complement;
  j["file"] = c.output;
  std::cout << j.dump(2) << '\n';
  return kOk;
}

int cmd_spectrum(const Config& c) {
  const auto g = make_geometry(c);
  const auto type = make_type(c, g.rank());
  auto graph = make_graph(g, type, c);
  Json j = header(g, "polar-ekr/spectrum/1");
  j.update(spectrum_section(g, graph));
  emit(j, c.output);
  return status_of(j);
}

int cmd_verify_counts(const Config& c) {
  const auto g = make_geometry(c);
  Json j = header(g, "polar-ekr/verify-counts/1");
  j.update(count_table(g, c.max_dim > 0 ? c.max_dim : g.rank()));
  emit(j, c.output);
  return status_of(j);
}

int cmd_verify_antidesigns(const Config& c) {
  const auto g = make_geometry(c);
  const auto type = make_type(c, g.rank());
  const auto graph = make_graph(g, type, c);
  Json j = header(g, "polar-ekr/verify-antidesigns/1");
  j.update(antidesign_section(g, graph, !c.summary_only));
  emit(j, c.output);
  return status_of(j);
}

int cmd_ekr(const Config& c) {
  const auto g = make_geometry(c);
  EKRSet f;
  if (!c.input.empty()) {
    std::ifstream in(c.input);
    if (!in) throw UsageError("cannot read " + c.input);
    try {
      f = read_ekr_json(in, g);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  } else if (!c.example.empty()) {
    try {
      const auto own = build_example(g, make_family(c.example), c.base).type;
      f = make_example(g, c, c.J == "own" ? own : make_type(c, g.rank()));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  } else {
    throw UsageError("ekr needs --example or --input");
  }

  Json j = header(g, "polar-ekr/ekr/1");
  j["set"] = Json{{"label", f.label}, {"J", f.type.dims()}, {"size", f.size()}};
  const auto check = verify_ekr(g, f);
  j["ekr"] = check.ok;
  j["violation"] = check.violation ? Json{check.violation->first, check.violation->second} : Json(nullptr);
  try {
    const auto graph = make_graph(g, f.type, c);
    const auto s = ratio_sharpness(g, graph, f);
    j["ratio_bound"] = number(s.bound);
    j["ratio_sharp"] = s.sharp;
    j["certificate"] = s.certificate;
  } catch (const std::length_error&) {
    j["ratio_bound"] = nullptr;
  }
  if (c.xyz) {
    if (!f.type.is_chamber_type()) throw UsageError("--xyz needs a set of chambers (use -J all)");
    j["xyz"] = xyz_section(g, f);
  }
  if (!c.output.empty()) {
    std::ofstream out(c.output);
    write_ekr_json(out, g, f);
    j["file"] = c.output;
  }
  std::cout << j.dump(2) << '\n';
  const bool ok = check.ok && (!j.contains("xyz") || j["xyz"]["ok"].get<bool>());
  return ok ? kOk : kFailed;
}

int cmd_search(const Config& c) {
  const auto g = make_geometry(c);
  const auto type = make_type(c, g.rank());
  std::optional<EKRSet> seed;
  if (!c.example.empty()) seed = make_example(g, c, type);
  const auto graph = make_graph(g, type, c);
  SearchOptions opt;
  opt.budget_seconds = c.budget;
  opt.node_limit = c.node_limit;
  opt.collect_limit = c.collect;
  Json j = header(g, "polar-ekr/search/1");
  j.update(search_section(g, graph, opt, seed, !c.deterministic, c.witness));
  emit(j, c.output);
  return status_of(j);
}

// Runs one report section; oversized graphs are recorded as skipped.
Json section(bool timings, const std::function<Json()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Json out;
  try {
    out = body();
  } catch (const std::length_error& e) {
    out = Json{{"skipped", e.what()}};
  } catch (const std::exception& e) {
    out = Json{{"error", e.what()}, {"ok", false}};
  }
  if (timings)
    out["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

int cmd_report(const Config& c) {
  const auto g = make_geometry(c);
  const int n = g.rank();
  const Params p = params_of(g.space());
  const bool timings = !c.deterministic;
  Json j = header(g, "polar-ekr/report/1");
  j["deterministic"] = c.deterministic;
  j["space_summary"] = section(timings, [&] { return space_summary(g); });
  j["counts"] = section(timings, [&] {
    Json t = count_table(g, n);
    std::size_t matched = 0;
    for (const auto& r : t["rows"]) matched += r["match"].get<bool>();
    return Json{{"rows", t["rows"].size()}, {"matched", matched}, {"ok", t["ok"]}};
  });

  std::vector<FlagType> types;
  for (int s = 1; s <= n; ++s) types.push_back(FlagType::single(s, n));
  if (n > 1) types.push_back(FlagType::chambers(n));
  std::map<std::string, OppositionGraph> graphs;
  Json spectra = Json::array(), antidesigns = Json::array(), searches = Json::array();
  for (const auto& t : types) {
    spectra.push_back(section(timings, [&] {
      auto gr = make_graph(g, t, c);
      Json s = spectrum_section(g, gr);
      graphs.emplace(t.str(), std::move(gr));
      return s;
    }));
  }
  j["spectra"] = spectra;

  Json quotients = Json::array();
  const auto chambers = graphs.find(FlagType::chambers(n).str());
  if (chambers != graphs.end()) {
    for (int mask = 1; mask + 1 < (1 << n); ++mask) {
      std::vector<int> dims;
      for (int s = 1; s <= n; ++s)
        if (mask >> (s - 1) & 1) dims.push_back(s);
      const FlagType t(dims, n);
      quotients.push_back(section(timings, [&] {
        const auto it = graphs.find(t.str());
        if (it != graphs.end()) return quotient_section(g, chambers->second, it->second);
        return quotient_section(g, chambers->second, make_graph(g, t, c));
      }));
    }
  }
  j["quotient_relations"] = quotients;

  for (const auto& t : types) {
    const auto it = graphs.find(t.str());
    if (it == graphs.end()) continue;
    antidesigns.push_back(section(timings, [&] { return antidesign_section(g, it->second, false); }));
  }
  j["antidesigns"] = antidesigns;

  if (p.tight_regime() && chambers != graphs.end() && graphs.count(FlagType::single(n, n).str())) {
    j["intersections"] = section(timings, [&] {
      return intersection_section(g, chambers->second, graphs.at(FlagType::single(n, n).str()));
    });
  }

  SearchOptions opt;
  opt.budget_seconds = c.budget;
  opt.node_limit = c.node_limit;
  for (const auto& t : types) {
    const auto it = graphs.find(t.str());
    if (it == graphs.end()) continue;
    searches.push_back(section(timings, [&] {
      std::optional<EKRSet> seed;
      if (t.contains(1) && (t.size() > 1 || p.tight_regime())) seed = example_for(g, ExampleFamily::a, 0, t);
      if (!t.contains(1) && t.contains(n)) seed = example_for(g, ExampleFamily::b, 0, t);
      return search_section(g, it->second, opt, seed, timings, false);
    }));
  }
  j["searches"] = searches;

  if (p.tight_regime() && n > 1) {
    Json xyz = Json::object();
    for (auto fam : {ExampleFamily::a, ExampleFamily::b})
      xyz[fam == ExampleFamily::a ? "a" : "b"] = section(timings, [&] {
        return xyz_section(g, blow_up(g, build_example(g, fam, 0), FlagType::chambers(n)));
      });
    j["xyz"] = xyz;
    j["structure"] = section(timings, [&] { return structure_section(g); });
  }
  if (g.space().kind() == PolarKind::hyperbolic) j["spinor"] = section(timings, [&] { return spinor_section(g); });

  bool ok = true;
  std::function<void(const Json&)> scan = [&](const Json& x) {
    if (x.is_object()) {
      if (x.contains("ok") && x["ok"].is_boolean() && !x["ok"].get<bool>()) ok = false;
      for (const auto& [k, v] : x.items()) scan(v);
    } else if (x.is_array()) {
      for (const auto& v : x) scan(v);
    }
  };
  scan(j);
  j["ok"] = ok;
  emit(j, c.output);
  return ok ? kOk : kFailed;
}

void space_options(CLI::App* sub, Config& c) {
  sub->add_option("--kind", c.kind,
                  "hyperbolic | hermitian_odd | symplectic | parabolic | hermitian_even | elliptic")
      ->capture_default_str();
  sub->add_option("-n,--rank", c.n, "rank n of the polar space")->capture_default_str()->check(CLI::Range(1, 16));
  sub->add_option("-q", c.q, "order of the field")->capture_default_str()->check(CLI::Range(2, 1 << 16));
  sub->add_option("-o,--output", c.output, "output file (stdout when empty)")->capture_default_str();
  sub->add_option("--threads", c.threads, "worker threads (POLAR_EKR_THREADS overrides)")
      ->capture_default_str()
      ->check(CLI::Range(1, 1024));
}

void type_option(CLI::App* sub, Config& c) {
  sub->add_option("-J,--type", c.J, "flag type: comma list of dimensions or 'all'")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  CLI::App app{"Exact computations on finite classical polar spaces and their opposition graphs", "polar-ekr"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  std::function<int(const Config&)> run;

  auto* space = app.add_subcommand("space", "subspace and chamber counts");
  space_options(space, c);
  space->add_option("--format", c.format, "json | csv")->capture_default_str()->check(CLI::IsMember({"json", "csv"}));
  space->add_option("--dim", c.dim, "subspace dimension exported as csv")->capture_default_str();
  space->callback([&] { run = cmd_space; });

  auto* graph = app.add_subcommand("graph", "build and export an opposition graph");
  space_options(graph, c);
  type_option(graph, c);
  graph->add_option("--format", c.format, "json | dimacs")->capture_default_str()->check(CLI::IsMember({"json", "dimacs"}));
  graph->add_flag("--complement", c.complement, "export the complement (dimacs)");
  graph->add_flag("--spectrum", c.attach_spectrum, "certify and embed the spectrum (json)");
  graph->callback([&] { run = cmd_graph; });

  auto* spectrum = app.add_subcommand("spectrum", "certified integral spectrum of an opposition graph");
  space_options(spectrum, c);
  type_option(spectrum, c);
  spectrum->callback([&] { run = cmd_spectrum; });

  auto* counts = app.add_subcommand("verify-counts", "closed-form counts against enumeration");
  space_options(counts, c);
  counts->add_option("--max-dim", c.max_dim, "largest subspace dimension enumerated (0 = n)")->capture_default_str();
  counts->callback([&] { run = cmd_verify_counts; });

  auto* anti = app.add_subcommand("verify-antidesigns", "antidesigns against the minimal eigenspace");
  space_options(anti, c);
  type_option(anti, c);
  anti->add_flag("--summary-only", c.summary_only, "omit the per-vector rows");
  anti->callback([&] { run = cmd_verify_antidesigns; });

  auto* ekr = app.add_subcommand("ekr", "construct or verify an EKR set");
  space_options(ekr, c);
  ekr->add_option("-J,--type", c.J, "target flag type of the example: comma list, 'all' or 'own'")
      ->capture_default_str();
  ekr->add_option("--example", c.example, "example family a | b | c | d");
  ekr->add_option("--base", c.base, "base subspace id of the example")->capture_default_str();
  ekr->add_option("--input", c.input, "EKR set JSON to verify");
  ekr->add_flag("--xyz", c.xyz, "X/Y/Z statistics for every probe subspace (chambers)");
  ekr->callback([&] { run = cmd_ekr; });

  auto* search = app.add_subcommand("search", "maximum independent set (largest EKR set)");
  space_options(search, c);
  type_option(search, c);
  search->add_option("--seed-example", c.example, "seed with example family a | b | c | d");
  search->add_option("--seed-base", c.base, "base subspace id of the seed example")->capture_default_str();
  search->add_option("--budget", c.budget, "time budget in seconds (<= 0: unlimited)")->capture_default_str();
  search->add_option("--node-limit", c.node_limit, "branch node limit (0: unlimited)")->capture_default_str();
  search->add_option("--collect", c.collect, "also enumerate up to this many maximum sets")->capture_default_str();
  search->add_flag("--witness", c.witness, "include the witness set");
  search->add_flag("--deterministic", c.deterministic, "omit timings");
  search->callback([&] { run = cmd_search; });

  auto* report = app.add_subcommand("report", "full verification suite for one space");
  space_options(report, c);
  report->add_option("--budget", c.budget, "time budget per search in seconds")->capture_default_str();
  report->add_option("--node-limit", c.node_limit, "branch node limit per search (0: unlimited)")
      ->capture_default_str();
  report->add_flag("--deterministic", c.deterministic, "omit timings so repeated runs are byte-identical");
  report->callback([&] { run = cmd_report; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (const char* env = std::getenv("POLAR_EKR_THREADS")) {
    try {
      std::size_t used = 0;
      const int t = std::stoi(env, &used);
      if (used != std::string(env).size() || t < 1) throw std::invalid_argument(env);
      c.threads = t;
    } catch (const std::exception&) {
      std::cerr << "error: POLAR_EKR_THREADS must be a positive integer\n";
      return kUsage;
    }
  }

  try {
    return run(c);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
}
