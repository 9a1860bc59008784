#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "shadowlab/pseudo.hpp"
#include "shadowlab/rat.hpp"
#include "shadowlab/report.hpp"
#include "shadowlab/system.hpp"

namespace shadowlab {

/// Invalid experiment parameters; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string experiment;  // ex41, ex1, odometer, chains
  std::string mode;        // odometer: shadow, exhaustive, limit, thick, isometry
  std::string system = "ladder";

  /// Explicit periodic structure m_1 | m_2 | ...; empty means m_k = 2^k.
  std::vector<std::int64_t> periods;
  int depth = 6;
  int K = 2;
  std::int64_t range = 16;
  std::size_t window = 128;
  Rat eps{1, 4};
  std::vector<Rat> deltas;
  std::size_t trials = 1000;
  std::size_t length = 200;
  std::uint64_t seed = 42;
  /// odometer limit: "single-jump:I:Z" or "random".
  std::string plan = "random";

  /// Throws ConfigError on m_1 < 2, broken divisibility, D < K, L < 2 or,
  /// outside `chains`, N < 1.
  void validate() const;
  OdometerSystem odometer() const;
};

std::vector<Rat> parse_rat_list(const std::string& text);

RunReport cmd_ex41(const ExperimentConfig& cfg);
RunReport cmd_ex1(const ExperimentConfig& cfg);
RunReport cmd_odometer(const ExperimentConfig& cfg);
RunReport cmd_chains(const ExperimentConfig& cfg);
/// Dispatches on cfg.experiment after validate().
RunReport run_experiment(const ExperimentConfig& cfg);

// Building blocks shared with the tests.

/// Limit pseudo orbit at a ladder fixed point y: cycles through y at
/// levels k = 1..levels, declared delta_k = 2^{-k}, padded with the trivial
/// cycle (y, y) to at least `window` points.
PseudoOrbit ladder_limit_orbit(const Point& y, int levels, std::size_t window);

/// Ladder claim: tail defect against the fixed point y beyond the start of
/// the final level is below 2^{-levels}, and every level n keeps the defect
/// within 2^{-n}.
VerificationReport ladder_limit_check(const Point& y, int levels, std::size_t window);

/// Orbit of 0 with x_I = Z, continuing exactly afterwards.
PseudoOrbit single_jump_orbit(const OdometerSystem& odo, std::size_t jump_index, std::int64_t target,
                              std::size_t window);

/// Seeded limit pseudo orbit with `levels` jumps; jump n changes only levels
/// n and above, so its error is at most 2^{-n}. Carries the matching schedule.
PseudoOrbit random_limit_orbit(const OdometerSystem& odo, std::size_t levels, std::size_t window,
                               std::uint64_t seed);

/// Seeded ergodic pseudo orbit for the thick-shadowing demo: bad indices at
/// powers of two up to window/4, jumps that keep the level-1 coordinate.
ErgodicOrbit thick_demo_orbit(const OdometerSystem& odo, std::size_t window, std::uint64_t seed);

}  // namespace shadowlab
