#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "shadowlab/point.hpp"
#include "shadowlab/rat.hpp"
#include "shadowlab/report.hpp"
#include "shadowlab/system.hpp"

namespace shadowlab {

/// Sorted, duplicate-free list of window indices.
using IndexSet = std::vector<std::size_t>;

IndexSet make_index_set(std::vector<std::size_t> raw);
std::string index_set_str(const IndexSet& s);

/// Declared decay: every one-step error at index >= `index` is <= `bound`.
struct ScheduleLevel {
  std::size_t index = 0;
  Rat bound;
};

/// Finite window x_0..x_{L-1} of a sequence in one of the built-in systems.
///
/// The error profile e_i = d(f(x_i), x_{i+1}) is derived from the points when
/// the object is built and the object is immutable afterwards; there is no
/// way to set errors independently of the points.
class PseudoOrbit {
 public:
  /// Throws std::invalid_argument if `points` is empty or a point is foreign
  /// to `sys`.
  PseudoOrbit(System sys, std::vector<Point> points, std::vector<ScheduleLevel> schedule = {},
              std::vector<std::size_t> junctions = {});

  const System& system() const { return sys_; }
  const std::vector<Point>& points() const { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  std::size_t size() const { return points_.size(); }

  const std::vector<Rat>& errors() const { return errors_; }
  /// Fresh computation of the error profile, for audits.
  std::vector<Rat> recompute_errors() const;

  Rat max_error() const;
  /// Max error over indices >= from.
  Rat max_error_from(std::size_t from) const;
  bool is_delta(const Rat& delta) const { return max_error() <= delta; }

  const std::vector<ScheduleLevel>& schedule() const { return schedule_; }
  /// Every declared level holds on the window.
  bool satisfies_schedule() const;
  PseudoOrbit with_schedule(std::vector<ScheduleLevel> schedule) const;

  /// Error indices where concatenated pieces meet.
  const std::vector<std::size_t>& junctions() const { return junctions_; }

  /// Structured text record: system id, points, schedule.
  std::string serialize() const;
  static PseudoOrbit parse(std::string_view text);

 private:
  System sys_;
  std::vector<Point> points_;
  std::vector<Rat> errors_;
  std::vector<ScheduleLevel> schedule_;
  std::vector<std::size_t> junctions_;
};

struct DensityProfile {
  IndexSet subset;
  std::size_t length = 0;
  /// |A ∩ [0,n)| / n for n = 1..length.
  std::vector<Rat> running;

  Rat final_density() const { return running.empty() ? Rat(0) : running.back(); }
};

struct LongestRun {
  IndexSet subset;
  std::size_t length = 0;
  std::size_t start = 0;
};

struct ErgodicOrbit {
  PseudoOrbit orbit;
  /// Error indices that follow the exact dynamics.
  IndexSet good;
  DensityProfile density;
};

struct OmegaEstimate {
  std::vector<Point> points;  // canonical order
  std::size_t tail_start = 0;
  /// The tail is an exact periodic orbit segment containing a full period.
  bool exact = false;
};

struct DeclaredCycle {
  std::vector<Point> points;
  Rat delta;
};

struct CrLift {
  PseudoOrbit lifted;
  /// d(x_i, y_i) = d(x_i, CR(f)).
  std::vector<Rat> lift_distances;
  /// d(f(y_i), f(x_i)) + e_i + d(x_{i+1}, y_{i+1}), which bounds the lifted error.
  std::vector<Rat> error_bounds;
  bool bounds_hold = true;
};

using JumpPicker = std::function<Point(std::size_t index, const Point& image)>;

PseudoOrbit from_orbit(const System& sys, const Point& x, std::size_t length);

/// Concatenates chains in order; junction errors are recorded, never capped.
/// Throws std::invalid_argument on an empty list or an empty chain.
PseudoOrbit concat_chains(const System& sys, const std::vector<std::vector<Point>>& chains);

/// Concatenates delta_k-cycles through a common point, eliding the repeated
/// junction point. The result carries the schedule (start of cycle k, delta_k).
/// Throws std::invalid_argument on endpoint mismatch, a cycle exceeding its
/// declared delta, increasing deltas, or a cycle with fewer than 2 points.
PseudoOrbit cycles_concat(const System& sys, const std::vector<DeclaredCycle>& cycles);

/// Follows the dynamics except at `bad` error indices, where the next point
/// is jump(i, f(x_i)).
ErgodicOrbit ergodic_po(const System& sys, const Point& x, std::size_t length, const IndexSet& bad,
                        const JumpPicker& jump);

DensityProfile density_profile(const IndexSet& subset, std::size_t length);
LongestRun longest_run(const IndexSet& subset, std::size_t length);

/// Distinct points among the final ceil(tail_fraction * L) entries.
/// Throws std::invalid_argument unless 0 < tail_fraction <= 1.
OmegaEstimate omega_estimate(const PseudoOrbit& po, const Rat& tail_fraction);

/// Distance from x to the known chain recurrent set.
Rat distance_to_cr(const System& sys, const Point& x);

VerificationReport check_omega_in_cr(const PseudoOrbit& po, const Rat& tail_fraction = Rat(1, 2));

/// Nearest chain recurrent point for every entry, ties by canonical order.
CrLift nearest_cr_lift(const PseudoOrbit& po);

}  // namespace shadowlab
