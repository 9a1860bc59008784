#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shadowlab/point.hpp"
#include "shadowlab/rat.hpp"

namespace shadowlab {

class PseudoOrbit;

/// Two monotone ladders s_n -> 1 and t_n -> 2 between the fixed points 0, 1, 2,
/// embedded in [0,2] as s_n = 2^n/(2^n+1) and t_n = 1 + 2^n/(2^n+1).
/// f fixes 0, 1, 2 and shifts ladder indices up by one.
class LadderSystem {
 public:
  static Rat embed(const Point& p);

  Point eval(const Point& p) const;
  Point inverse(const Point& p) const;
  Rat dist(const Point& a, const Point& b) const { return abs(embed(a) - embed(b)); }

  /// Fixed points plus s(n), t(n) for |n| <= range.
  std::vector<Point> candidates(std::int64_t range) const;
};

/// Depth-truncated odometer: the quotient Z/m_D of the adding machine with
/// periodic structure m_1 | m_2 | ... | m_D. A residue n has coordinates
/// x_k = n mod m_k, and g(n) = n + 1 mod m_D.
class OdometerSystem {
 public:
  /// Validates m_1 >= 2, strict increase, divisibility, and m_D < 2^62.
  /// Throws std::invalid_argument otherwise.
  explicit OdometerSystem(std::vector<std::int64_t> periods);

  /// m_k = 2^k for k = 1..depth.
  static OdometerSystem dyadic(int depth);

  int depth() const { return static_cast<int>(periods_.size()); }
  /// m_k for 0 <= k <= depth, with m_0 = 1.
  std::int64_t modulus(int k) const { return k == 0 ? 1 : periods_[static_cast<std::size_t>(k - 1)]; }
  std::int64_t size() const { return periods_.back(); }
  const std::vector<std::int64_t>& periods() const { return periods_; }

  Point eval(const Point& p) const;
  Point inverse(const Point& p) const;
  /// sup_k 2^{-k} [x_k != y_k]; zero iff equal.
  Rat dist(const Point& a, const Point& b) const;

  /// Least level k with x mod m_k != y mod m_k, or 0 if x == y.
  int first_disagreement(std::int64_t x, std::int64_t y) const;
  /// Number of leading levels forced to agree by d(x,y) <= delta; every
  /// y with y = x mod m_j (j the returned value) is within delta of x.
  int agreement_levels(const Rat& delta) const;

  std::vector<Point> candidates() const;
  /// All residues within delta of the residue `center`, ascending.
  std::vector<Point> ball(std::int64_t center, const Rat& delta) const;

  std::int64_t reduce(std::int64_t n) const;

 private:
  std::vector<std::int64_t> periods_;
  std::shared_ptr<const std::vector<Rat>> weights_;  // 2^{-k}, k = 0..D
};

/// An odometer plus one isolated point p with f(p) = 0 and d(p, x) = 2 for
/// every residue x.
class PointedOdometer {
 public:
  explicit PointedOdometer(OdometerSystem inner) : inner_(std::move(inner)) {}

  const OdometerSystem& inner() const { return inner_; }

  Point eval(const Point& p) const;
  Rat dist(const Point& a, const Point& b) const;
  std::vector<Point> candidates() const;

  static const Rat& extra_distance();

 private:
  OdometerSystem inner_;
};

/// Exact description of one of the sets M(f), Omega(f), CR(f).
struct KnownSet {
  enum class Kind { Finite, AllResidues };
  Kind kind = Kind::Finite;
  std::vector<Point> points;  // Finite only, canonical order

  bool contains(const Point& p) const;
};

struct KnownSets {
  KnownSet minimal;
  KnownSet nonwandering;
  KnownSet chain_recurrent;
};

enum class SystemKind { Ladder, Odometer, PointedOdometer };

/// The closed set of built-in systems behind one value type.
class System {
 public:
  static System ladder();
  static System odometer(OdometerSystem sys);
  static System pointed(PointedOdometer sys);
  /// Inverse of id(). Throws std::invalid_argument on unknown ids.
  static System from_id(std::string_view id);

  SystemKind kind() const;
  /// "ladder", "odometer[2,4,8]", "pointed-odometer[2,4,8]".
  std::string id() const;

  Point eval(const Point& p) const;
  Rat dist(const Point& a, const Point& b) const;
  bool has_inverse() const { return kind() != SystemKind::PointedOdometer; }
  /// Throws std::logic_error when the system is not invertible.
  Point inverse(const Point& p) const;

  /// The odometer systems ignore `ladder_range`.
  std::vector<Point> candidates(std::int64_t ladder_range = 0) const;
  /// Candidates within delta of `center` (ladder: restricted to ladder_range).
  std::vector<Point> ball(const Point& center, const Rat& delta,
                          std::int64_t ladder_range = 0) const;
  bool contains(const Point& p) const;

  Point parse_point(std::string_view text) const;

  /// Residue arithmetic of the plain or pointed odometer; null for the ladder.
  const OdometerSystem* odometer_part() const;
  /// True when f is an isometry of the whole space (plain odometer only).
  bool is_isometry() const { return kind() == SystemKind::Odometer; }

  bool operator==(const System& o) const { return id() == o.id(); }

 private:
  using Impl = std::variant<LadderSystem, OdometerSystem, PointedOdometer>;
  explicit System(Impl impl) : impl_(std::move(impl)) {}
  Impl impl_;
};

// --- operations -----------------------------------------------------------

Rat ladder_embed(const Point& pt);
Rat odometer_dist(const OdometerSystem& sys, std::int64_t x, std::int64_t y);

/// Level-k cylinders C_j = {x : x mod m_k = j}.
struct CylinderPartition {
  int level = 0;
  std::int64_t modulus = 1;
  std::vector<std::vector<Point>> classes;
  /// Certified upper bound on the diameter of every class.
  Rat diameter_bound;
  /// Certified minimum distance between points of distinct classes.
  Rat separation;

  std::int64_t class_of(const Point& p) const { return p.index % modulus; }
};

/// Throws std::out_of_range unless 1 <= level <= depth.
CylinderPartition cylinder_partition(const OdometerSystem& sys, int level);

/// (p, r, f(r), f^2(r), ...) with r = f^{m_{K-1}}(0), truncated to `window`
/// points. Throws std::out_of_range unless 2 <= K <= depth and window >= 1.
PseudoOrbit pointed_gamma(const PointedOdometer& sys, int K, std::size_t window);

KnownSets known_sets(const System& sys);

/// Points in the candidate set with f(x) = x.
std::vector<Point> fixed_points(const System& sys, std::int64_t ladder_range = 0);

}  // namespace shadowlab
