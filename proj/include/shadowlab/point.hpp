#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace shadowlab {

enum class PointKind : std::uint8_t {
  FixedZero,
  FixedOne,
  FixedTwo,
  S,
  T,
  Residue,
  Extra,
};

/// A point of one of the built-in systems.
///
/// Ladder points carry their ladder index in `index` (S and T only); odometer
/// points carry the residue. The pointed odometer's isolated point is `Extra`.
/// The defaulted ordering (kind, then index) is the canonical order used for
/// every deterministic tie-break in the library.
struct Point {
  PointKind kind = PointKind::FixedZero;
  std::int64_t index = 0;

  static constexpr Point fixed_zero() { return {PointKind::FixedZero, 0}; }
  static constexpr Point fixed_one() { return {PointKind::FixedOne, 0}; }
  static constexpr Point fixed_two() { return {PointKind::FixedTwo, 0}; }
  static constexpr Point s(std::int64_t n) { return {PointKind::S, n}; }
  static constexpr Point t(std::int64_t n) { return {PointKind::T, n}; }
  static constexpr Point residue(std::int64_t r) { return {PointKind::Residue, r}; }
  static constexpr Point extra() { return {PointKind::Extra, 0}; }

  bool is_ladder() const { return kind <= PointKind::T; }
  bool is_fixed_ladder() const { return kind <= PointKind::FixedTwo; }
  bool is_residue() const { return kind == PointKind::Residue; }

  /// "0", "1", "2", "s(n)", "t(n)", decimal residue, or "p".
  std::string str() const;

  /// Inverse of str(). Bare decimals parse as residues except "0", "1", "2",
  /// which are ambiguous and resolved by `ladder` (true: fixed ladder points).
  static Point parse(std::string_view text, bool ladder);

  friend constexpr bool operator==(const Point&, const Point&) = default;
  friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept {
    return std::hash<std::int64_t>{}(p.index) * 31u + static_cast<std::size_t>(p.kind);
  }
};

}  // namespace shadowlab
