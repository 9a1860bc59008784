#pragma once

#include <cstddef>
#include <vector>

#include "shadowlab/point.hpp"
#include "shadowlab/rat.hpp"
#include "shadowlab/report.hpp"
#include "shadowlab/system.hpp"

namespace shadowlab {

/// f^0(x), ..., f^length(x).
struct OrbitSegment {
  Point base;
  std::size_t length = 0;
  std::vector<Point> images;
};

OrbitSegment orbit(const System& sys, const Point& x, std::size_t length);

/// Symmetry, identity of indiscernibles and the triangle inequality over all
/// pairs and triples of `pts`. Reports the first violation.
VerificationReport check_metric_axioms(const System& sys, const std::vector<Point>& pts);

/// d(f(x), f(y)) <= d(x, y) over all pairs; for isometric systems also
/// requires equality.
VerificationReport check_nonexpansive(const System& sys, const std::vector<Point>& pts);

/// max_{0 <= n <= horizon} d(f^n x, f^n y): a lower bound for the adapted
/// metric sup_n d(f^n x, f^n y), exact at any horizon when f is an isometry.
Rat adapted_metric_bound(const System& sys, const Point& x, const Point& y, std::size_t horizon);

}  // namespace shadowlab
