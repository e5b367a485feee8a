#include "polar_ekr/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>
#include <stdexcept>

namespace polar {

namespace {

using Word = std::uint64_t;

class Bits {
public:
  explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i >> 6] |= Word{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(Word{1} << (i & 63)); }
  bool test(std::size_t i) const { return w_[i >> 6] >> (i & 63) & 1; }
  bool any() const {
    for (auto x : w_)
      if (x) return true;
    return false;
  }
  std::size_t first() const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(w_[k]));
    return SIZE_MAX;
  }
  void and_with(const Bits& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
  }
  void and_not(const Bits& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
  }

private:
  std::vector<Word> w_;
};

struct Stop {};

class Solver {
public:
  Solver(const OppositionGraph& g, const SearchOptions& opt) : opt_(opt), n_(g.vertex_count()) {
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0u);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return g.degree(a) > g.degree(b); });
    std::vector<std::uint32_t> pos(n_);
    for (std::uint32_t i = 0; i < n_; ++i) pos[order_[i]] = i;
    adj_.assign(n_, Bits(n_));
    for (std::uint32_t i = 0; i < n_; ++i)
      for (auto u : g.neighbors(order_[i])) adj_[i].set(pos[u]);
    start_ = std::chrono::steady_clock::now();
  }

  void seed(std::vector<std::uint32_t> set) {
    if (set.size() > best_) {
      best_ = set.size();
      best_set_.clear();
      std::vector<std::uint32_t> pos(n_);
      for (std::uint32_t i = 0; i < n_; ++i) pos[order_[i]] = i;
      for (auto v : set) best_set_.push_back(pos[v]);
    }
  }
  std::size_t best() const { return best_; }

  std::size_t root_colour_bound() {
    Bits all(n_);
    for (std::size_t i = 0; i < n_; ++i) all.set(i);
    std::vector<std::uint32_t> verts, colours;
    colour(all, verts, colours);
    return colours.empty() ? 0 : colours.back();
  }

  // true when the search finished
  bool run() {
    Bits all(n_);
    for (std::size_t i = 0; i < n_; ++i) all.set(i);
    try {
      expand(all, 0);
    } catch (const Stop&) {
      return false;
    }
    return true;
  }

  std::size_t interrupted_bound() const { return std::max(best_, root_pending_); }
  std::uint64_t nodes() const { return nodes_; }
  std::vector<std::uint32_t> witness() const { return to_ids(best_set_); }
  std::vector<std::vector<std::uint32_t>> all_maximum() const {
    std::vector<std::vector<std::uint32_t>> out;
    for (const auto& s : all_) out.push_back(to_ids(s));
    std::sort(out.begin(), out.end());
    return out;
  }
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::vector<std::uint32_t> to_ids(const std::vector<std::uint32_t>& s) const {
    std::vector<std::uint32_t> out;
    for (auto i : s) out.push_back(order_[i]);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Greedy sequential colouring: each class is a clique of the graph, so an
  // independent set takes at most one vertex per class.
  void colour(const Bits& p, std::vector<std::uint32_t>& verts, std::vector<std::uint32_t>& colours) const {
    Bits u = p;
    std::uint32_t k = 0;
    while (u.any()) {
      ++k;
      Bits q = u;
      for (std::size_t v = q.first(); v != SIZE_MAX; v = q.first()) {
        q.and_with(adj_[v]);
        u.reset(v);
        verts.push_back(static_cast<std::uint32_t>(v));
        colours.push_back(k);
      }
    }
  }

  void record() {
    if (current_.size() > best_) {
      best_ = current_.size();
      best_set_ = current_;
      all_.clear();
    }
    if (opt_.collect_limit > 0 && current_.size() == best_ && all_.size() < opt_.collect_limit) all_.push_back(current_);
  }

  void expand(Bits p, int depth) {
    ++nodes_;
    if (opt_.node_limit && nodes_ > opt_.node_limit) throw Stop{};
    if (opt_.budget_seconds > 0 && (nodes_ & 255) == 0 && elapsed() > opt_.budget_seconds) throw Stop{};
    std::vector<std::uint32_t> verts, colours;
    colour(p, verts, colours);
    const std::size_t slack = opt_.collect_limit > 0 ? 1 : 0;
    for (std::size_t i = verts.size(); i-- > 0;) {
      if (depth == 0) root_pending_ = colours[i];
      if (current_.size() + colours[i] + slack <= best_) return;
      const auto v = verts[i];
      current_.push_back(v);
      Bits np = p;
      np.and_not(adj_[v]);
      np.reset(v);
      if (np.any())
        expand(std::move(np), depth + 1);
      else
        record();
      current_.pop_back();
      p.reset(v);
    }
    if (depth == 0) root_pending_ = 0;
  }

  const SearchOptions& opt_;
  std::size_t n_;
  std::vector<std::uint32_t> order_;
  std::vector<Bits> adj_;
  std::vector<std::uint32_t> current_, best_set_;
  std::vector<std::vector<std::uint32_t>> all_;
  std::size_t best_ = 0;
  std::size_t root_pending_ = 0;
  std::uint64_t nodes_ = 0;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

SearchResult max_independent_set(const OppositionGraph& graph, const SearchOptions& options) {
  Solver solver(graph, options);
  for (const auto& s : options.seeds) {
    if (!verify_ekr(graph, s).ok) throw std::invalid_argument("max_independent_set: seed is not independent");
    std::vector<std::uint32_t> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("max_independent_set: seed repeats a vertex");
    solver.seed(sorted);
  }
  SearchResult out;
  std::size_t upper = solver.root_colour_bound();
  if (options.root_bound) upper = std::min(upper, *options.root_bound);
  if (solver.best() > upper) throw std::logic_error("max_independent_set: a seed exceeds the upper bound");

  if (solver.best() == upper && options.collect_limit == 0) {
    out.method = "squeeze";
    out.status = "proved";
  } else {
    out.method = "branch-and-bound";
    if (solver.run()) {
      out.status = "proved";
      upper = solver.best();
    } else {
      out.status = "bounds-only";
      upper = std::min(upper, solver.interrupted_bound());
    }
  }
  out.alpha = solver.best();
  out.upper_bound = upper;
  if (out.alpha == out.upper_bound) out.status = "proved";
  if (options.root_bound && out.alpha > *options.root_bound)
    throw std::logic_error("max_independent_set: independence number above the ratio bound");
  out.witness = solver.witness();
  out.nodes = solver.nodes();
  out.seconds = solver.elapsed();
  out.all_maximum = solver.all_maximum();
  if (!verify_ekr(graph, out.witness).ok) throw std::logic_error("max_independent_set: witness is not independent");
  return out;
}

StructureReport structure_check(const Geometry& g, const EKRSet& f, std::size_t alpha) {
  if (!f.type.is_chamber_type()) throw std::invalid_argument("structure_check: needs a set of chambers");
  if (f.size() != alpha) throw std::invalid_argument("structure_check: the set is not of maximum size");
  StructureReport out;
  for (int s = 1; s <= g.rank(); ++s) {
    const auto heavy = heavy_subspaces(g, f, s);
    if (heavy.empty()) continue;
    EKRSet base{FlagType::single(s, g.rank()), std::vector<FlagIndex>(heavy.begin(), heavy.end()), "heavy"};
    if (blow_up(g, base, f.type).members == f.members) {
      out.is_blow_up = true;
      out.s = s;
      out.base = heavy;
      out.extremal_dimension = s == 1 || s == g.rank();
      return out;
    }
  }
  return out;
}

}  // namespace polar
