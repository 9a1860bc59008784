#include "support.hpp"

#include <set>
#include <sstream>

#include "shadowlab/chains.hpp"

using namespace shadowlab;
using testing::R;

namespace {

const System kLadder = System::ladder();
const std::vector<Point> kFixed{Point::fixed_zero(), Point::fixed_one(), Point::fixed_two()};

std::vector<Point> ladder_sample(std::int64_t n) { return kLadder.candidates(n); }

// Reachability by repeated relaxation over the raw predicate, independent of
// the stored adjacency and of the SCC code.
std::vector<std::vector<bool>> closure_oracle(const ChainGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) reach[a][b] = g.edge_predicate(a, b);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t a = 0; a < n; ++a) {
      if (!reach[a][k]) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (reach[k][b]) reach[a][b] = true;
      }
    }
  }
  return reach;
}

}  // namespace

TEST_CASE("ladder fixed points: edge sets") {
  const ChainGraph half(kLadder, kFixed, R(1, 2));
  CHECK(half.edge_count() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(half.has_edge(i, i));

  const ChainGraph one(kLadder, kFixed, R(1));
  CHECK(one.edge_count() == 7);
  CHECK(one.has_edge(0, 1));
  CHECK(one.has_edge(1, 0));
  CHECK(one.has_edge(1, 2));
  CHECK(one.has_edge(2, 1));
  CHECK_FALSE(one.has_edge(0, 2));
  CHECK_FALSE(one.has_edge(2, 0));
}

TEST_CASE("stored edges agree with the predicate") {
  const std::vector<std::pair<System, std::vector<Point>>> cases{
      {kLadder, ladder_sample(6)},
      {System::odometer(OdometerSystem::dyadic(5)), System::odometer(OdometerSystem::dyadic(5)).candidates()},
      {System::odometer(OdometerSystem({3, 6, 12})), System::odometer(OdometerSystem({3, 6, 12})).candidates()},
      {System::pointed(PointedOdometer(OdometerSystem::dyadic(4))),
       System::pointed(PointedOdometer(OdometerSystem::dyadic(4))).candidates()}};
  for (const auto& [sys, verts] : cases) {
    for (const Rat& delta : {R(0), R(1, 100), R(1, 16), R(1, 8), R(1, 4), R(1, 2), R(1), R(2)}) {
      const ChainGraph g(sys, verts, delta);
      std::size_t count = 0;
      for (std::size_t a = 0; a < g.vertex_count(); ++a) {
        for (std::size_t b = 0; b < g.vertex_count(); ++b) {
          const bool expect = sys.dist(sys.eval(g.vertices()[a]), g.vertices()[b]) <= delta;
          CHECK(g.has_edge(a, b) == expect);
          count += expect;
        }
        const auto succ = g.successors(a);
        CHECK(std::is_sorted(succ.begin(), succ.end()));
      }
      CHECK(g.edge_count() == count);
    }
  }
}

TEST_CASE("edge monotonicity and self-tracking edges") {
  const auto verts = ladder_sample(6);
  const std::vector<Rat> deltas{R(0), R(1, 64), R(1, 16), R(1, 4), R(1)};
  for (std::size_t i = 0; i + 1 < deltas.size(); ++i) {
    const ChainGraph a(kLadder, verts, deltas[i]);
    const ChainGraph b(kLadder, verts, deltas[i + 1]);
    for (std::size_t u = 0; u < verts.size(); ++u) {
      for (const auto v : a.successors(u)) CHECK(b.has_edge(u, v));
      const auto fu = a.index_of(kLadder.eval(verts[u]));
      if (fu) CHECK(a.has_edge(u, *fu));
    }
  }
}

TEST_CASE("graph construction errors") {
  CHECK_THROWS_AS(ChainGraph(kLadder, {Point::fixed_one(), Point::fixed_one()}, R(1)), std::invalid_argument);
  CHECK_THROWS_AS(ChainGraph(kLadder, {Point::residue(1)}, R(1)), std::invalid_argument);
  CHECK_THROWS_AS(ChainGraph(kLadder, kFixed, R(-1)), std::invalid_argument);
}

TEST_CASE("scc on small graphs") {
  const auto half = scc(ChainGraph(kLadder, kFixed, R(1, 2))).chain_components;
  CHECK(half.components.size() == 3);
  const auto one = scc(ChainGraph(kLadder, kFixed, R(1))).chain_components;
  REQUIRE(one.components.size() == 1);
  CHECK(one.components[0] == kFixed);

  const System odo = System::odometer(OdometerSystem::dyadic(3));
  const ChainGraph g(odo, odo.candidates(), R(0));
  CHECK(g.edge_count() == 8);
  const auto c = scc(g).chain_components;
  REQUIRE(c.components.size() == 1);
  CHECK(c.components[0].size() == 8);
}

TEST_CASE("scc matches the transitive-closure oracle") {
  std::vector<std::pair<System, std::vector<Point>>> cases{
      {kLadder, ladder_sample(5)},
      {System::pointed(PointedOdometer(OdometerSystem::dyadic(3))),
       System::pointed(PointedOdometer(OdometerSystem::dyadic(3))).candidates()}};
  // A random subset of odometer residues gives non-trivial DAG structure.
  const System odo = System::odometer(OdometerSystem::dyadic(6));
  std::mt19937_64 rng(17);
  std::vector<Point> sub;
  for (const auto& p : odo.candidates()) {
    if (rng() % 3 == 0) sub.push_back(p);
  }
  cases.emplace_back(odo, sub);
  for (const auto& [sys, verts] : cases) {
    for (const Rat& delta : {R(0), R(1, 64), R(1, 16), R(1, 8), R(1, 4), R(1, 2)}) {
      const ChainGraph g(sys, verts, delta);
      const auto reach = closure_oracle(g);
      const auto dec = scc(g);
      std::set<Point> cr;
      for (std::size_t a = 0; a < verts.size(); ++a) {
        if (reach[a][a]) cr.insert(g.vertices()[a]);
      }
      const auto got = chain_recurrent_vertices(g);
      CHECK(std::vector<Point>(cr.begin(), cr.end()) == got);
      const auto& comps = dec.chain_components;
      for (const auto& x : got) {
        for (const auto& y : got) {
          const auto a = *g.index_of(x), b = *g.index_of(y);
          CHECK((comps.component_of(x) == comps.component_of(y)) == (reach[a][b] && reach[b][a]));
        }
      }
      // Condensation order is topological: no edge points back to an earlier SCC.
      std::vector<std::size_t> pos(verts.size());
      for (std::size_t k = 0; k < dec.condensation_order.size(); ++k) {
        for (const auto& p : dec.condensation_order[k]) pos[*g.index_of(p)] = k;
      }
      for (std::size_t a = 0; a < verts.size(); ++a) {
        for (const auto b : g.successors(a)) CHECK(pos[a] <= pos[b]);
      }
    }
  }
}

TEST_CASE("chain recurrent vertices on the ladder sample") {
  const ChainGraph zero(kLadder, ladder_sample(6), R(0));
  CHECK(chain_recurrent_vertices(zero) == kFixed);

  const ChainGraph g(kLadder, ladder_sample(6), R(1, 100));
  const auto cr = chain_recurrent_vertices(g);
  for (const auto& f : kFixed) CHECK(std::find(cr.begin(), cr.end(), f) != cr.end());
  // With the sample capped at |n| <= 6, s(n) near 1 can return through 1 only if
  // d(f(s(6)), 1) <= 1/100 and d(f(1), s(n)) <= 1/100; f(s(6)) = s(7) is
  // outside the sample, so recurrence goes through the edge s(6) -> 1.
  CHECK(kLadder.dist(Point::s(7), Point::fixed_one()) == R(1, 129));
  CHECK(kLadder.dist(Point::fixed_one(), Point::s(6)) == R(1, 65));
  for (const auto& p : cr) CHECK((p.is_fixed_ladder() || p.index >= 6 || p.index <= -6));

  const System odo = System::odometer(OdometerSystem::dyadic(4));
  for (const Rat& d : {R(0), R(1, 4), R(1)}) {
    CHECK(chain_recurrent_vertices(ChainGraph(odo, odo.candidates(), d)).size() == 16);
  }
}

TEST_CASE("refinement") {
  const auto c_half = scc(ChainGraph(kLadder, kFixed, R(1, 2))).chain_components;
  const auto c_one = scc(ChainGraph(kLadder, kFixed, R(1))).chain_components;
  CHECK(refinement_check(c_half, c_one).passed());
  CHECK(refinement_check(c_one, c_one).passed());
  CHECK_THROWS_AS(refinement_check(c_one, c_half), std::invalid_argument);
  const auto c_other = scc(ChainGraph(kLadder, ladder_sample(1), R(1))).chain_components;
  CHECK_THROWS_AS(refinement_check(c_half, c_other), std::invalid_argument);

  const System odo = System::odometer(OdometerSystem::dyadic(3));
  CHECK(refinement_check(scc(ChainGraph(odo, odo.candidates(), R(0))).chain_components,
                         scc(ChainGraph(odo, odo.candidates(), R(1, 4))).chain_components)
            .passed());

  const std::vector<Rat> deltas{R(0), R(1, 128), R(1, 64), R(1, 33), R(1, 16), R(1, 9), R(1, 4), R(1, 2), R(1)};
  const auto verts = ladder_sample(8);
  std::vector<ChainComponents> cs;
  for (const auto& d : deltas) cs.push_back(scc(ChainGraph(kLadder, verts, d)).chain_components);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i; j < cs.size(); ++j) CHECK(refinement_check(cs[i], cs[j]).passed());
  }
}

TEST_CASE("find_chain") {
  const ChainGraph g(kLadder, ladder_sample(3), R(1, 4));
  const auto chain = find_chain(g, Point::fixed_zero(), Point::fixed_two());
  REQUIRE(chain.has_value());
  CHECK(chain->front() == Point::fixed_zero());
  CHECK(chain->back() == Point::fixed_two());
  // Hop sizes named in the construction.
  CHECK(kLadder.dist(kLadder.eval(Point::fixed_zero()), Point::s(-2)) == R(1, 5));
  CHECK(kLadder.dist(kLadder.eval(Point::s(3)), Point::t(-3)) == R(26, 153));
  CHECK(kLadder.dist(kLadder.eval(Point::t(3)), Point::fixed_two()) == R(1, 17));
  for (std::size_t i = 0; i + 1 < chain->size(); ++i) {
    CHECK(kLadder.dist(kLadder.eval((*chain)[i]), (*chain)[i + 1]) <= R(1, 4));
  }
  // BFS depth oracle: the shortest hop count from 0 to 2.
  {
    std::vector<int> depth(g.vertex_count(), -1);
    std::vector<std::size_t> frontier{*g.index_of(Point::fixed_zero())};
    depth[frontier[0]] = 0;
    for (int d = 1; !frontier.empty(); ++d) {
      std::vector<std::size_t> next;
      for (const auto u : frontier) {
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
          if (depth[v] < 0 && g.edge_predicate(u, v)) depth[v] = d, next.push_back(v);
        }
      }
      frontier = next;
    }
    CHECK(static_cast<int>(chain->size()) - 1 == depth[*g.index_of(Point::fixed_two())]);
  }

  const auto loop = find_chain(g, Point::fixed_one(), Point::fixed_one());
  REQUIRE(loop.has_value());
  CHECK(*loop == std::vector<Point>{Point::fixed_one(), Point::fixed_one()});

  const ChainGraph fine(kLadder, ladder_sample(6), R(1, 100));
  CHECK_FALSE(find_chain(fine, Point::fixed_one(), Point::fixed_zero()).has_value());
  CHECK_THROWS_AS(find_chain(fine, Point::s(9), Point::fixed_zero()), std::invalid_argument);

  // A shortest cycle through a non-fixed vertex.
  const System odo = System::odometer(OdometerSystem::dyadic(3));
  const auto cyc = find_chain(ChainGraph(odo, odo.candidates(), R(0)), Point::residue(5), Point::residue(5));
  REQUIRE(cyc.has_value());
  CHECK(cyc->size() == 9);
}

TEST_CASE("c_set") {
  const System odo = System::odometer(OdometerSystem::dyadic(3));
  const ChainGraph g(odo, odo.candidates(), R(0));
  CHECK(c_set(g, Point::residue(2), 8).size() == 8);
  CHECK(c_set(g, Point::residue(2), 1).size() == 8);

  const ChainGraph fine(kLadder, ladder_sample(6), R(1, 100));
  CHECK(kLadder.dist(Point::fixed_zero(), Point::s(-7)) == R(1, 129));
  CHECK(c_set(fine, Point::fixed_zero(), 1) == std::vector<Point>{Point::fixed_zero()});

  const ChainGraph full(kLadder, kFixed, R(2));
  CHECK(c_set(full, Point::fixed_zero(), 1) == kFixed);
  CHECK_THROWS_AS(c_set(full, Point::fixed_zero(), 0), std::invalid_argument);

  // Exact-length reachability oracle on a partial odometer graph.
  std::vector<Point> sub;
  for (std::int64_t r = 0; r < 32; r += 3) sub.push_back(Point::residue(r));
  const System odo5 = System::odometer(OdometerSystem::dyadic(5));
  const ChainGraph h(odo5, sub, R(1, 8));
  for (std::size_t len = 1; len <= 4; ++len) {
    std::set<std::size_t> layer{0};
    std::set<std::size_t> got;
    for (std::size_t step = 1; step <= len + sub.size() + 1; ++step) {
      std::set<std::size_t> next;
      for (const auto u : layer) {
        for (std::size_t v = 0; v < sub.size(); ++v) {
          if (h.edge_predicate(u, v)) next.insert(v);
        }
      }
      layer = next;
      if (step >= len) got.insert(layer.begin(), layer.end());
    }
    std::vector<Point> expect;
    for (const auto i : got) expect.push_back(h.vertices()[i]);
    CHECK(c_set(h, sub[0], len) == expect);
  }
}

TEST_CASE("CR localization on the ladder") {
  const auto verts = ladder_sample(8);
  const auto a = cr_localization(ChainGraph(kLadder, verts, R(1, 4)));
  const auto b = cr_localization(ChainGraph(kLadder, verts, R(1, 16)));
  const auto c = cr_localization(ChainGraph(kLadder, verts, R(1, 64)));
  CHECK(a.bound == R(1, 2));
  CHECK(b.bound == R(1, 9));
  CHECK(c.bound == R(1, 33));
  CHECK(c.bound <= R(1, 16));
  CHECK(b.bound <= a.bound);
  CHECK(c.bound <= b.bound);
  const auto z = cr_localization(ChainGraph(kLadder, verts, R(0)));
  CHECK(z.bound == R(0));
  CHECK(z.chain_recurrent_count == 3);
}

TEST_CASE("proximity merge experiment") {
  for (const Rat& eta : {R(1, 64), R(1, 32)}) {
    CHECK(proximity_merge_check(kLadder, ladder_sample(8), R(1, 16), eta).passed());
  }
  const System odo = System::odometer(OdometerSystem::dyadic(5));
  CHECK(proximity_merge_check(odo, odo.candidates(), R(1, 4), R(1, 8)).passed());
}

TEST_CASE("adjacency export") {
  const ChainGraph one(kLadder, kFixed, R(1));
  const auto text = one.export_adjacency();
  CHECK(text.find("0 1\n") != std::string::npos);
  CHECK(text.find("2 1\n") != std::string::npos);
  CHECK(text.find("0 2\n") == std::string::npos);
  std::size_t edges = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') ++edges;
  }
  CHECK(edges == one.edge_count());
}
