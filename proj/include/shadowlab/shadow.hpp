#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "shadowlab/pseudo.hpp"
#include "shadowlab/report.hpp"
#include "shadowlab/system.hpp"

namespace shadowlab {

/// Per-index defects d(x_i, f^i(y)) of a candidate shadow y.
struct ShadowDefect {
  Point candidate;
  std::vector<Rat> defects;
  Rat max_defect;

  Rat max_defect_from(std::size_t from) const;
  Rat min_defect_from(std::size_t from) const;
};

ShadowDefect shadow_defect(const PseudoOrbit& po, const Point& y);

/// Every candidate whose max defect is <= eps, in candidate order.
std::vector<Point> find_shadows(const PseudoOrbit& po, const Rat& eps, const std::vector<Point>& candidates);

/// Excludes every member of a ladder class by one window entry: the whole
/// forward orbit of each member lies in `enclosure`, and the entry at `index`
/// is at distance >= `bound` >= eps from the closure of that interval, so each
/// member's defect there is strictly greater than eps.
struct ClassCertificate {
  std::string member_class;  // e.g. "s(n), |n| > 16"
  std::string enclosure;     // e.g. "(0,1)"
  std::size_t index = 0;
  Rat bound;
};

struct NoShadowResult {
  VerificationReport report;
  std::vector<ClassCertificate> certificates;
};

/// No point of the ladder eps-shadows `po`: brute force over the fixed points
/// and s(n), t(n) with |n| <= range, class certificates for the rest.
NoShadowResult verify_no_shadow(const PseudoOrbit& po, const Rat& eps, std::int64_t range);

/// delta = 2^{-(k+1)} for the least cylinder level k whose classes have
/// diameter <= eps (k = depth gives singletons, and delta then forces exact
/// orbits). Every delta-pseudo orbit is then eps-shadowed by its own start.
/// Throws std::invalid_argument unless eps > 0.
Rat odometer_shadow_modulus(const OdometerSystem& sys, const Rat& eps);

/// For every i: d(f^{i-j}(x_j), f^{i-j-1}(x_{j+1})) <= delta for 0 <= j < i.
VerificationReport check_pi_property(const PseudoOrbit& po, const Rat& delta);

/// Uniformly random delta-step from `image` within the candidate universe.
Point random_delta_step(const System& sys, const Point& image, const Rat& delta, std::mt19937_64& rng,
                        std::int64_t ladder_range);

/// `trials` seeded random delta-pseudo orbits of `length` points starting at
/// x, each checked for being eps-shadowed by x itself.
VerificationReport chain_continuity_check(const System& sys, const Point& x, const Rat& eps, const Rat& delta,
                                          std::size_t trials, std::size_t length, std::uint64_t seed,
                                          std::int64_t ladder_range = 16);

/// Enumerates every delta-pseudo orbit of `length` points over the whole
/// residue alphabet and checks that x_0 eps-shadows it, with delta the
/// odometer modulus of eps.
VerificationReport exhaustive_shadow_check(const OdometerSystem& sys, const Rat& eps, std::size_t length);

struct LimitShadowResult {
  VerificationReport report;
  Point limit;
  /// y_n = f^{-i_n}(x_{i_n}) for levels n = 1..N.
  std::vector<Point> approximants;
  std::vector<std::size_t> indices;
  /// First level n from which every later approximant equals the limit.
  std::size_t stabilized_at = 0;
};

/// Least indices i_1 <= i_2 <= ... with d(x_{i_n+j}, f^j(x_{i_n})) <= 2^{-n}
/// for every in-window j. Levels carry bound 2^{-n}.
std::vector<ScheduleLevel> derive_limit_schedule(const PseudoOrbit& po, std::size_t levels);

/// Limit shadowing point of a scheduled pseudo orbit on an invertible
/// isometric system. Level n of the schedule (1-based) is the index i_n at
/// tolerance 2^{-n}. Throws std::invalid_argument if the system is not an
/// invertible isometry or the schedule is empty or decreasing; a schedule
/// that fails its tolerance is reported.
LimitShadowResult limit_shadow_construct(const PseudoOrbit& po);

struct ThickShadowResult {
  Point best;
  IndexSet agreement;
  DensityProfile density;
  LongestRun run;
};

/// Candidate maximizing the longest run of its agreement set
/// {i : d(x_i, f^i(y)) <= eps}; ties by agreement size, then candidate order.
/// Throws std::invalid_argument on an empty candidate list.
ThickShadowResult thick_shadow_report(const PseudoOrbit& po, const Rat& eps, const std::vector<Point>& candidates);

/// The pointed-odometer pipeline: gamma = (p, r, f(r), ...) is a 2^{-K}-pseudo
/// orbit, exact after index 0, its only 1-shadow is p, and p's orbit stays at
/// distance >= 2^{-K} from gamma at every index j >= 1.
VerificationReport slimit_counterexample(const PointedOdometer& sys, int K, std::size_t window);

}  // namespace shadowlab
