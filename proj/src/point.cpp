#include "shadowlab/point.hpp"

#include <charconv>
#include <stdexcept>

namespace shadowlab {
namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw std::invalid_argument("cannot parse point '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

std::string Point::str() const {
  switch (kind) {
    case PointKind::FixedZero: return "0";
    case PointKind::FixedOne: return "1";
    case PointKind::FixedTwo: return "2";
    case PointKind::S: return "s(" + std::to_string(index) + ")";
    case PointKind::T: return "t(" + std::to_string(index) + ")";
    case PointKind::Residue: return std::to_string(index);
    case PointKind::Extra: return "p";
  }
  return "?";
}

Point Point::parse(std::string_view text, bool ladder) {
  if (text == "p") return extra();
  if (text.size() >= 4 && (text[0] == 's' || text[0] == 't') && text[1] == '(' &&
      text.back() == ')') {
    const auto n = parse_int(text.substr(2, text.size() - 3), text);
    return text[0] == 's' ? s(n) : t(n);
  }
  const auto v = parse_int(text, text);
  if (ladder) {
    if (v == 0) return fixed_zero();
    if (v == 1) return fixed_one();
    if (v == 2) return fixed_two();
    throw std::invalid_argument("not a ladder point: '" + std::string(text) + "'");
  }
  if (v < 0) throw std::invalid_argument("negative residue: '" + std::string(text) + "'");
  return residue(v);
}

}  // namespace shadowlab
