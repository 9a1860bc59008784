#pragma once

#include <doctest.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "shadowlab/point.hpp"
#include "shadowlab/rat.hpp"

namespace doctest {
template <>
struct StringMaker<shadowlab::Point> {
  static String convert(const shadowlab::Point& p) { return p.str().c_str(); }
};
template <>
struct StringMaker<shadowlab::Rat> {
  static String convert(const shadowlab::Rat& r) { return r.str().c_str(); }
};
template <>
struct StringMaker<std::vector<shadowlab::Point>> {
  static String convert(const std::vector<shadowlab::Point>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].str();
    return (s + "]").c_str();
  }
};
}  // namespace doctest

namespace testing {

using shadowlab::Point;
using shadowlab::Rat;

inline Rat R(std::int64_t n, std::int64_t d = 1) { return Rat(n, d); }

/// Independent closed form for the ladder embedding, built from int64 pieces:
/// s(n) = 2^n/(2^n+1) = 1/(1+2^{-n}).
inline Rat ladder_oracle(const Point& p) {
  using shadowlab::PointKind;
  const auto s = [](std::int64_t n) {
    const std::int64_t a = std::int64_t{1} << (n >= 0 ? n : -n);
    return n >= 0 ? Rat(a, a + 1) : Rat(1, a + 1);
  };
  switch (p.kind) {
    case PointKind::FixedZero: return Rat(0);
    case PointKind::FixedOne: return Rat(1);
    case PointKind::FixedTwo: return Rat(2);
    case PointKind::S: return s(p.index);
    case PointKind::T: return Rat(1) + s(p.index);
    default: throw std::logic_error("not a ladder point");
  }
}

/// Coordinate-by-coordinate odometer metric: sup_k 2^{-k} [x_k != y_k].
inline Rat odometer_oracle(const std::vector<std::int64_t>& periods, std::int64_t x, std::int64_t y) {
  for (std::size_t k = 0; k < periods.size(); ++k) {
    if (x % periods[k] != y % periods[k]) return Rat(1, std::int64_t{2} << k);
  }
  return Rat(0);
}

inline std::vector<std::int64_t> dyadic_periods(int depth) {
  std::vector<std::int64_t> m;
  for (int k = 1; k <= depth; ++k) m.push_back(std::int64_t{1} << k);
  return m;
}

}  // namespace testing
