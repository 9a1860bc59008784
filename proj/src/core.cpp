#include "shadowlab/core.hpp"

namespace shadowlab {

OrbitSegment orbit(const System& sys, const Point& x, std::size_t length) {
  OrbitSegment seg{x, length, {}};
  seg.images.reserve(length + 1);
  seg.images.push_back(x);
  for (std::size_t i = 0; i < length; ++i) seg.images.push_back(sys.eval(seg.images.back()));
  return seg;
}

VerificationReport check_metric_axioms(const System& sys, const std::vector<Point>& pts) {
  VerificationReport rep("metric-axioms", "d is a metric on X");
  rep.param("system", sys.id()).param("points", static_cast<std::int64_t>(pts.size()));
  const std::size_t n = pts.size();
  if (n == 0) return rep.fail("empty point list");

  // Distance table first; every axiom is then a pure table check.
  std::vector<Rat> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = sys.dist(pts[i], pts[j]);
  }
  std::size_t triples = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rat& dij = d[i * n + j];
      if (dij.sign() < 0) return rep.fail("negative distance d(" + pts[i].str() + "," + pts[j].str() + ")");
      if (dij != d[j * n + i]) {
        return rep.fail("asymmetric at (" + pts[i].str() + "," + pts[j].str() + ")");
      }
      if ((dij.is_zero()) != (pts[i] == pts[j])) {
        return rep.fail("identity of indiscernibles fails at (" + pts[i].str() + "," + pts[j].str() + ")");
      }
      for (std::size_t k = 0; k < n; ++k) {
        ++triples;
        if (dij > d[i * n + k] + d[k * n + j]) {
          return rep.fail("triangle inequality fails at (" + pts[i].str() + "," + pts[k].str() +
                          "," + pts[j].str() + ")");
        }
      }
    }
  }
  rep.witness("triples_checked", static_cast<std::int64_t>(triples));
  return rep;
}

VerificationReport check_nonexpansive(const System& sys, const std::vector<Point>& pts) {
  const bool isometry = sys.is_isometry();
  VerificationReport rep("nonexpansive", isometry ? "d(f(x),f(y)) = d(x,y)" : "d(f(x),f(y)) <= d(x,y)");
  rep.param("system", sys.id()).param("points", static_cast<std::int64_t>(pts.size()));
  rep.param("require_isometry", isometry ? "true" : "false");
  if (pts.empty()) return rep.fail("empty point list");
  std::vector<Point> images;
  images.reserve(pts.size());
  for (const auto& p : pts) images.push_back(sys.eval(p));
  std::int64_t pairs = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      ++pairs;
      const Rat before = sys.dist(pts[i], pts[j]);
      const Rat after = sys.dist(images[i], images[j]);
      if (after > before || (isometry && after != before)) {
        rep.witness("pair", "(" + pts[i].str() + "," + pts[j].str() + ")");
        rep.witness("d_before", before).witness("d_after", after);
        return rep.fail(after > before ? "distance grows under f" : "distance shrinks under an isometry");
      }
    }
  }
  rep.witness("pairs_checked", pairs);
  return rep;
}

Rat adapted_metric_bound(const System& sys, const Point& x, const Point& y, std::size_t horizon) {
  Rat best(0);
  Point a = x;
  Point b = y;
  for (std::size_t n = 0;; ++n) {
    best = max(best, sys.dist(a, b));
    if (n == horizon) break;
    a = sys.eval(a);
    b = sys.eval(b);
  }
  return best;
}

}  // namespace shadowlab
