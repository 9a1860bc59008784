#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "shadowlab/point.hpp"
#include "shadowlab/rat.hpp"
#include "shadowlab/report.hpp"
#include "shadowlab/system.hpp"

namespace shadowlab {

/// The delta-chain relation on a finite vertex set: x -> y iff d(f(x), y) <= delta.
///
/// Vertices are stored in canonical order and successor lists are ascending,
/// so every traversal is deterministic. Adjacency is compressed sparse rows.
class ChainGraph {
 public:
  /// Throws std::invalid_argument on duplicate or foreign vertices, or a
  /// negative delta.
  ChainGraph(System sys, std::vector<Point> vertices, Rat delta);

  const System& system() const { return sys_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const Rat& delta() const { return delta_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return targets_.size(); }

  std::span<const std::uint32_t> successors(std::size_t v) const {
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  bool has_edge(std::size_t from, std::size_t to) const;
  /// Recomputes d(f(x), y) <= delta from scratch, bypassing the stored edges.
  bool edge_predicate(std::size_t from, std::size_t to) const;

  std::optional<std::size_t> index_of(const Point& p) const;

  /// "# ..." header lines listing the vertices, then one "x y" line per edge.
  std::string export_adjacency() const;

 private:
  System sys_;
  std::vector<Point> vertices_;
  Rat delta_;
  std::unordered_map<Point, std::uint32_t, PointHash> index_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> targets_;
};

ChainGraph build_graph(const System& sys, std::vector<Point> vertices, const Rat& delta);

/// Chain components: SCCs that carry a cycle (size > 1 or a self-loop).
struct ChainComponents {
  Rat delta;
  std::vector<Point> vertices;  // the whole graph vertex set
  /// Each component in canonical order; components ordered by first member.
  std::vector<std::vector<Point>> components;

  std::size_t component_of(const Point& p) const;  // npos when absent
};

struct SccDecomposition {
  /// All SCCs in a topological order of the condensation (sources first).
  std::vector<std::vector<Point>> condensation_order;
  std::vector<bool> cyclic;  // parallel to condensation_order
  ChainComponents chain_components;
};

SccDecomposition scc(const ChainGraph& g);

/// Vertices lying on some delta-cycle of the graph.
std::vector<Point> chain_recurrent_vertices(const ChainGraph& g);

/// Every c1 component lies inside a single c2 component. Throws
/// std::invalid_argument if delta1 > delta2 or the vertex sets differ.
VerificationReport refinement_check(const ChainComponents& c1, const ChainComponents& c2);

/// A shortest delta-chain x = x_0, ..., x_k = y with k >= 1, or nullopt when
/// breadth-first search exhausts the graph. Ties follow canonical order.
std::optional<std::vector<Point>> find_chain(const ChainGraph& g, const Point& x, const Point& y);

/// Vertices reachable from x by chains with at least `min_len` hops.
std::vector<Point> c_set(const ChainGraph& g, const Point& x, std::size_t min_len);

struct CrLocalization {
  /// max over chain recurrent vertices of the distance to the known CR set.
  Rat bound;
  std::optional<Point> farthest;
  std::size_t chain_recurrent_count = 0;
};

CrLocalization cr_localization(const ChainGraph& g);

/// If x and y both lie on eta-cycles and d(x, y) <= delta - eta, they share a
/// delta-component. Reports every pair that does not.
VerificationReport proximity_merge_check(const System& sys, const std::vector<Point>& vertices,
                                         const Rat& delta, const Rat& eta);

}  // namespace shadowlab
