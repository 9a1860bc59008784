#include "shadowlab/chains.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "shadowlab/pseudo.hpp"

namespace shadowlab {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

ChainGraph::ChainGraph(System sys, std::vector<Point> vertices, Rat delta)
    : sys_(std::move(sys)), vertices_(std::move(vertices)), delta_(std::move(delta)) {
  if (delta_.sign() < 0) throw std::invalid_argument("chain graph delta must be >= 0");
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw std::invalid_argument("chain graph vertices must be distinct");
  }
  if (vertices_.size() >= std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("chain graph too large");
  }
  index_.reserve(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!sys_.contains(vertices_[i])) {
      throw std::invalid_argument("vertex " + vertices_[i].str() + " not in " + sys_.id());
    }
    index_.emplace(vertices_[i], static_cast<std::uint32_t>(i));
  }

  const OdometerSystem* odo = sys_.odometer_part();
  std::size_t ball_size = kNone;
  if (odo != nullptr) {
    ball_size = static_cast<std::size_t>(odo->size() / odo->modulus(odo->agreement_levels(delta_))) + 1;
  }
  const bool use_ball = ball_size < vertices_.size();

  offsets_.reserve(vertices_.size() + 1);
  offsets_.push_back(0);
  std::vector<std::uint32_t> row;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Point image = sys_.eval(vertices_[i]);
    row.clear();
    if (use_ball) {
      for (const auto& y : sys_.ball(image, delta_)) {
        if (auto it = index_.find(y); it != index_.end()) row.push_back(it->second);
      }
      std::sort(row.begin(), row.end());
    } else {
      for (std::size_t j = 0; j < vertices_.size(); ++j) {
        if (sys_.dist(image, vertices_[j]) <= delta_) row.push_back(static_cast<std::uint32_t>(j));
      }
    }
    targets_.insert(targets_.end(), row.begin(), row.end());
    offsets_.push_back(targets_.size());
  }
}

bool ChainGraph::has_edge(std::size_t from, std::size_t to) const {
  const auto s = successors(from);
  return std::binary_search(s.begin(), s.end(), static_cast<std::uint32_t>(to));
}

bool ChainGraph::edge_predicate(std::size_t from, std::size_t to) const {
  return sys_.dist(sys_.eval(vertices_.at(from)), vertices_.at(to)) <= delta_;
}

std::optional<std::size_t> ChainGraph::index_of(const Point& p) const {
  if (auto it = index_.find(p); it != index_.end()) return it->second;
  return std::nullopt;
}

std::string ChainGraph::export_adjacency() const {
  std::ostringstream os;
  os << "# chain-graph system=" << sys_.id() << " delta=" << delta_.str() << " vertices="
     << vertices_.size() << " edges=" << targets_.size() << "\n";
  for (const auto& v : vertices_) os << "# vertex " << v.str() << "\n";
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (const auto j : successors(i)) os << vertices_[i].str() << ' ' << vertices_[j].str() << "\n";
  }
  return os.str();
}

ChainGraph build_graph(const System& sys, std::vector<Point> vertices, const Rat& delta) {
  return ChainGraph(sys, std::move(vertices), delta);
}

std::size_t ChainComponents::component_of(const Point& p) const {
  for (std::size_t c = 0; c < components.size(); ++c) {
    if (std::binary_search(components[c].begin(), components[c].end(), p)) return c;
  }
  return kNone;
}

namespace {

// Iterative Tarjan. Returns SCC ids per vertex; ids are assigned in
// reverse topological order of the condensation (sinks first).
std::vector<std::size_t> tarjan(const ChainGraph& g, std::size_t& count) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> index(n, kNone);
  std::vector<std::size_t> low(n, 0);
  std::vector<std::size_t> comp(n, kNone);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> frames;  // (vertex, next successor slot)
  std::size_t next_index = 0;
  count = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kNone) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, slot] = frames.back();
      const auto succ = g.successors(v);
      if (slot < succ.size()) {
        const std::size_t w = succ[slot++];
        if (index[w] == kNone) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const std::size_t parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::size_t w = kNone;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
        } while (w != done);
        ++count;
      }
    }
  }
  return comp;
}

}  // namespace

SccDecomposition scc(const ChainGraph& g) {
  std::size_t count = 0;
  const auto comp = tarjan(g, count);
  std::vector<std::vector<Point>> by_id(count);
  std::vector<bool> cyclic(count, false);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    by_id[comp[v]].push_back(g.vertices()[v]);
    if (g.has_edge(v, v)) cyclic[comp[v]] = true;
  }
  SccDecomposition out;
  out.chain_components.delta = g.delta();
  out.chain_components.vertices = g.vertices();
  for (std::size_t id = count; id-- > 0;) {
    const bool cyc = cyclic[id] || by_id[id].size() > 1;
    out.condensation_order.push_back(by_id[id]);
    out.cyclic.push_back(cyc);
    if (cyc) out.chain_components.components.push_back(by_id[id]);
  }
  auto& comps = out.chain_components.components;
  std::sort(comps.begin(), comps.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

std::vector<Point> chain_recurrent_vertices(const ChainGraph& g) {
  std::vector<Point> out;
  for (const auto& c : scc(g).chain_components.components) out.insert(out.end(), c.begin(), c.end());
  std::sort(out.begin(), out.end());
  return out;
}

VerificationReport refinement_check(const ChainComponents& c1, const ChainComponents& c2) {
  if (c1.delta > c2.delta) throw std::invalid_argument("refinement_check: requires delta1 <= delta2");
  if (c1.vertices != c2.vertices) throw std::invalid_argument("refinement_check: vertex sets differ");
  VerificationReport rep("chain-component-refinement",
                         "every delta_2-chain component is a disjoint union of delta_1-chain components");
  rep.param("delta1", c1.delta).param("delta2", c2.delta);
  rep.param("vertices", static_cast<std::int64_t>(c1.vertices.size()));
  rep.witness("components_delta1", static_cast<std::int64_t>(c1.components.size()));
  rep.witness("components_delta2", static_cast<std::int64_t>(c2.components.size()));
  for (const auto& comp : c1.components) {
    const std::size_t host = c2.component_of(comp.front());
    for (const auto& p : comp) {
      if (host == kNone || c2.component_of(p) != host) {
        rep.witness("straddling_component", join_points(comp));
        return rep.fail("delta1 component not inside a single delta2 component");
      }
    }
  }
  return rep;
}

std::optional<std::vector<Point>> find_chain(const ChainGraph& g, const Point& x, const Point& y) {
  const auto xi = g.index_of(x);
  const auto yi = g.index_of(y);
  if (!xi || !yi) throw std::invalid_argument("find_chain: endpoints must be vertices");
  const std::size_t n = g.vertex_count();
  // parent[v] records the BFS predecessor of v at its first (shortest) hop
  // count >= 1; x itself is only marked once re-entered.
  std::vector<std::size_t> parent(n, kNone);
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue;
  for (const auto w : g.successors(*xi)) {
    if (!seen[w]) {
      seen[w] = true;
      parent[w] = *xi;
      queue.push_back(w);
    }
  }
  while (!queue.empty() && !seen[*yi]) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (const auto w : g.successors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = v;
        queue.push_back(w);
      }
    }
  }
  if (!seen[*yi]) return std::nullopt;
  std::vector<Point> chain{g.vertices()[*yi]};
  std::size_t v = *yi;
  do {
    v = parent[v];
    chain.push_back(g.vertices()[v]);
  } while (v != *xi);
  std::reverse(chain.begin(), chain.end());
  const Rat& delta = g.delta();
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (g.system().dist(g.system().eval(chain[i]), chain[i + 1]) > delta) {
      throw std::logic_error("find_chain: produced a hop above delta");
    }
  }
  return chain;
}

std::vector<Point> c_set(const ChainGraph& g, const Point& x, std::size_t min_len) {
  const auto xi = g.index_of(x);
  if (!xi) throw std::invalid_argument("c_set: x must be a vertex");
  if (min_len == 0) throw std::invalid_argument("c_set: min_len must be >= 1");
  const std::size_t n = g.vertex_count();
  std::vector<char> layer(n, 0);
  layer[*xi] = 1;
  std::vector<char> next(n, 0);
  for (std::size_t step = 0; step < min_len; ++step) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t v = 0; v < n; ++v) {
      if (!layer[v]) continue;
      for (const auto w : g.successors(v)) next[w] = 1;
    }
    layer.swap(next);
  }
  // Anything reachable from the exact-length layer extends some chain.
  std::deque<std::size_t> queue;
  for (std::size_t v = 0; v < n; ++v) {
    if (layer[v]) queue.push_back(v);
  }
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (const auto w : g.successors(v)) {
      if (!layer[w]) {
        layer[w] = 1;
        queue.push_back(w);
      }
    }
  }
  std::vector<Point> out;
  for (std::size_t v = 0; v < n; ++v) {
    if (layer[v]) out.push_back(g.vertices()[v]);
  }
  return out;
}

CrLocalization cr_localization(const ChainGraph& g) {
  CrLocalization loc{Rat(0), std::nullopt, 0};
  for (const auto& v : chain_recurrent_vertices(g)) {
    ++loc.chain_recurrent_count;
    Rat d = distance_to_cr(g.system(), v);
    if (!loc.farthest || d > loc.bound) {
      loc.bound = std::move(d);
      loc.farthest = v;
    }
  }
  return loc;
}

VerificationReport proximity_merge_check(const System& sys, const std::vector<Point>& vertices,
                                         const Rat& delta, const Rat& eta) {
  if (eta > delta || eta.sign() < 0) throw std::invalid_argument("proximity_merge_check: need 0 <= eta <= delta");
  VerificationReport rep("proximity-merge", "eta-cycle points within delta - eta share a delta-chain component");
  rep.param("system", sys.id()).param("delta", delta).param("eta", eta);
  const ChainGraph fine(sys, vertices, eta);
  const ChainGraph coarse(sys, vertices, delta);
  const auto recurrent = chain_recurrent_vertices(fine);
  const auto comps = scc(coarse).chain_components;
  const Rat slack = delta - eta;
  std::int64_t pairs = 0;
  std::int64_t exceptions = 0;
  for (std::size_t i = 0; i < recurrent.size(); ++i) {
    for (std::size_t j = i + 1; j < recurrent.size(); ++j) {
      if (sys.dist(recurrent[i], recurrent[j]) > slack) continue;
      ++pairs;
      const auto ci = comps.component_of(recurrent[i]);
      if (ci == kNone || ci != comps.component_of(recurrent[j])) {
        if (exceptions++ == 0) {
          rep.witness("first_exception", "(" + recurrent[i].str() + "," + recurrent[j].str() + ")");
        }
      }
    }
  }
  rep.witness("close_pairs", pairs).witness("exceptions", exceptions);
  if (exceptions > 0) rep.fail("close eta-recurrent pairs in distinct delta components");
  return rep;
}

}  // namespace shadowlab
