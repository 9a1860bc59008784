#include "shadowlab/system.hpp"

#include <algorithm>
#include <stdexcept>

#include "shadowlab/pseudo.hpp"

namespace shadowlab {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// 2^n / (2^n + 1) for any integer n.
Rat ladder_fraction(std::int64_t n) {
  mpz_class p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(n < 0 ? -n : n));
  if (n >= 0) return Rat(p, p + 1);
  return Rat(mpz_class(1), p + 1);
}

void require_residue(const OdometerSystem& sys, const Point& p) {
  if (!p.is_residue() || p.index < 0 || p.index >= sys.size()) {
    throw std::invalid_argument("not a residue of this odometer: " + p.str());
  }
}

std::string periods_str(const OdometerSystem& sys) {
  std::string out = "[";
  for (std::size_t i = 0; i < sys.periods().size(); ++i) {
    if (i) out += ",";
    out += std::to_string(sys.periods()[i]);
  }
  return out + "]";
}

}  // namespace

// --- ladder ---------------------------------------------------------------

Rat LadderSystem::embed(const Point& p) {
  switch (p.kind) {
    case PointKind::FixedZero: return Rat(0);
    case PointKind::FixedOne: return Rat(1);
    case PointKind::FixedTwo: return Rat(2);
    case PointKind::S: return ladder_fraction(p.index);
    case PointKind::T: return Rat(1) + ladder_fraction(p.index);
    default: throw std::invalid_argument("not a ladder point: " + p.str());
  }
}

Point LadderSystem::eval(const Point& p) const {
  switch (p.kind) {
    case PointKind::S: return Point::s(p.index + 1);
    case PointKind::T: return Point::t(p.index + 1);
    case PointKind::FixedZero:
    case PointKind::FixedOne:
    case PointKind::FixedTwo: return p;
    default: throw std::invalid_argument("not a ladder point: " + p.str());
  }
}

Point LadderSystem::inverse(const Point& p) const {
  switch (p.kind) {
    case PointKind::S: return Point::s(p.index - 1);
    case PointKind::T: return Point::t(p.index - 1);
    case PointKind::FixedZero:
    case PointKind::FixedOne:
    case PointKind::FixedTwo: return p;
    default: throw std::invalid_argument("not a ladder point: " + p.str());
  }
}

std::vector<Point> LadderSystem::candidates(std::int64_t range) const {
  if (range < 0) throw std::invalid_argument("ladder range must be >= 0");
  std::vector<Point> out{Point::fixed_zero(), Point::fixed_one(), Point::fixed_two()};
  for (std::int64_t n = -range; n <= range; ++n) out.push_back(Point::s(n));
  for (std::int64_t n = -range; n <= range; ++n) out.push_back(Point::t(n));
  return out;
}

// --- odometer -------------------------------------------------------------

OdometerSystem::OdometerSystem(std::vector<std::int64_t> periods) : periods_(std::move(periods)) {
  if (periods_.empty()) throw std::invalid_argument("odometer needs depth >= 1");
  if (periods_.front() < 2) throw std::invalid_argument("odometer needs m_1 >= 2");
  for (std::size_t k = 1; k < periods_.size(); ++k) {
    if (periods_[k] <= periods_[k - 1]) {
      throw std::invalid_argument("odometer periods must be strictly increasing");
    }
    if (periods_[k] % periods_[k - 1] != 0) {
      throw std::invalid_argument("odometer periods must divide each other: " +
                                  std::to_string(periods_[k - 1]) + " does not divide " +
                                  std::to_string(periods_[k]));
    }
    if (periods_[k] > (std::int64_t{1} << 62)) {
      throw std::invalid_argument("odometer period too large");
    }
  }
  auto w = std::make_shared<std::vector<Rat>>();
  for (std::size_t k = 0; k <= periods_.size(); ++k) w->push_back(Rat::pow2_neg(static_cast<std::int64_t>(k)));
  weights_ = std::move(w);
}

OdometerSystem OdometerSystem::dyadic(int depth) {
  if (depth < 1 || depth > 62) throw std::invalid_argument("dyadic odometer depth must be in [1,62]");
  std::vector<std::int64_t> m;
  for (int k = 1; k <= depth; ++k) m.push_back(std::int64_t{1} << k);
  return OdometerSystem(std::move(m));
}

std::int64_t OdometerSystem::reduce(std::int64_t n) const {
  const auto r = n % size();
  return r < 0 ? r + size() : r;
}

Point OdometerSystem::eval(const Point& p) const {
  require_residue(*this, p);
  return Point::residue(p.index + 1 == size() ? 0 : p.index + 1);
}

Point OdometerSystem::inverse(const Point& p) const {
  require_residue(*this, p);
  return Point::residue(p.index == 0 ? size() - 1 : p.index - 1);
}

int OdometerSystem::first_disagreement(std::int64_t x, std::int64_t y) const {
  for (int k = 1; k <= depth(); ++k) {
    const auto m = modulus(k);
    if (x % m != y % m) return k;
  }
  return 0;
}

Rat OdometerSystem::dist(const Point& a, const Point& b) const {
  require_residue(*this, a);
  require_residue(*this, b);
  const int k = first_disagreement(a.index, b.index);
  return k == 0 ? Rat(0) : (*weights_)[static_cast<std::size_t>(k)];
}

int OdometerSystem::agreement_levels(const Rat& delta) const {
  int j = 0;
  while (j < depth() && (*weights_)[static_cast<std::size_t>(j + 1)] > delta) ++j;
  return j;
}

std::vector<Point> OdometerSystem::candidates() const {
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::int64_t r = 0; r < size(); ++r) out.push_back(Point::residue(r));
  return out;
}

std::vector<Point> OdometerSystem::ball(std::int64_t center, const Rat& delta) const {
  std::vector<Point> out;
  if (delta.sign() < 0) return out;
  const auto step = modulus(agreement_levels(delta));
  for (std::int64_t r = center % step; r < size(); r += step) out.push_back(Point::residue(r));
  return out;
}

// --- pointed odometer -----------------------------------------------------

const Rat& PointedOdometer::extra_distance() {
  static const Rat two(2);
  return two;
}

Point PointedOdometer::eval(const Point& p) const {
  if (p.kind == PointKind::Extra) return Point::residue(0);
  return inner_.eval(p);
}

Rat PointedOdometer::dist(const Point& a, const Point& b) const {
  const bool ea = a.kind == PointKind::Extra;
  const bool eb = b.kind == PointKind::Extra;
  if (ea && eb) return Rat(0);
  if (ea || eb) {
    require_residue(inner_, ea ? b : a);
    return extra_distance();
  }
  return inner_.dist(a, b);
}

std::vector<Point> PointedOdometer::candidates() const {
  auto out = inner_.candidates();
  out.push_back(Point::extra());
  return out;
}

// --- known sets -----------------------------------------------------------

bool KnownSet::contains(const Point& p) const {
  if (kind == Kind::AllResidues) return p.is_residue();
  return std::binary_search(points.begin(), points.end(), p);
}

// --- System ---------------------------------------------------------------

System System::ladder() { return System(LadderSystem{}); }
System System::odometer(OdometerSystem sys) { return System(std::move(sys)); }
System System::pointed(PointedOdometer sys) { return System(std::move(sys)); }

System System::from_id(std::string_view id) {
  if (id == "ladder") return ladder();
  const auto open = id.find('[');
  if (open == std::string_view::npos || id.back() != ']') {
    throw std::invalid_argument("unknown system id '" + std::string(id) + "'");
  }
  const auto name = id.substr(0, open);
  std::vector<std::int64_t> periods;
  std::string_view body = id.substr(open + 1, id.size() - open - 2);
  while (!body.empty()) {
    const auto comma = body.find(',');
    periods.push_back(std::stoll(std::string(body.substr(0, comma))));
    body = comma == std::string_view::npos ? std::string_view() : body.substr(comma + 1);
  }
  if (name == "odometer") return odometer(OdometerSystem(std::move(periods)));
  if (name == "pointed-odometer") return pointed(PointedOdometer(OdometerSystem(std::move(periods))));
  throw std::invalid_argument("unknown system id '" + std::string(id) + "'");
}

SystemKind System::kind() const {
  return static_cast<SystemKind>(impl_.index());
}

std::string System::id() const {
  return std::visit(Overloaded{
                        [](const LadderSystem&) { return std::string("ladder"); },
                        [](const OdometerSystem& o) { return "odometer" + periods_str(o); },
                        [](const PointedOdometer& o) { return "pointed-odometer" + periods_str(o.inner()); },
                    },
                    impl_);
}

Point System::eval(const Point& p) const {
  return std::visit([&](const auto& s) { return s.eval(p); }, impl_);
}

Rat System::dist(const Point& a, const Point& b) const {
  return std::visit([&](const auto& s) { return s.dist(a, b); }, impl_);
}

Point System::inverse(const Point& p) const {
  return std::visit(Overloaded{
                        [&](const LadderSystem& s) { return s.inverse(p); },
                        [&](const OdometerSystem& s) { return s.inverse(p); },
                        [](const PointedOdometer&) -> Point {
                          throw std::logic_error("pointed odometer is not invertible");
                        },
                    },
                    impl_);
}

std::vector<Point> System::candidates(std::int64_t ladder_range) const {
  return std::visit(Overloaded{
                        [&](const LadderSystem& s) { return s.candidates(ladder_range); },
                        [](const OdometerSystem& s) { return s.candidates(); },
                        [](const PointedOdometer& s) { return s.candidates(); },
                    },
                    impl_);
}

std::vector<Point> System::ball(const Point& center, const Rat& delta,
                                std::int64_t ladder_range) const {
  return std::visit(
      Overloaded{
          [&](const LadderSystem& s) {
            std::vector<Point> out;
            for (const auto& c : s.candidates(ladder_range)) {
              if (s.dist(center, c) <= delta) out.push_back(c);
            }
            std::sort(out.begin(), out.end());
            return out;
          },
          [&](const OdometerSystem& s) { return s.ball(center.index, delta); },
          [&](const PointedOdometer& s) {
            const bool far = delta >= PointedOdometer::extra_distance();
            std::vector<Point> out;
            if (center.kind == PointKind::Extra) {
              if (far) out = s.inner().candidates();
            } else {
              out = far ? s.inner().candidates() : s.inner().ball(center.index, delta);
            }
            if (center.kind == PointKind::Extra || far) out.push_back(Point::extra());
            return out;
          },
      },
      impl_);
}

bool System::contains(const Point& p) const {
  return std::visit(Overloaded{
                        [&](const LadderSystem&) { return p.is_ladder(); },
                        [&](const OdometerSystem& s) {
                          return p.is_residue() && p.index >= 0 && p.index < s.size();
                        },
                        [&](const PointedOdometer& s) {
                          return p.kind == PointKind::Extra ||
                                 (p.is_residue() && p.index >= 0 && p.index < s.inner().size());
                        },
                    },
                    impl_);
}

Point System::parse_point(std::string_view text) const {
  const auto p = Point::parse(text, kind() == SystemKind::Ladder);
  if (!contains(p)) throw std::invalid_argument("point '" + std::string(text) + "' not in " + id());
  return p;
}

const OdometerSystem* System::odometer_part() const {
  if (const auto* o = std::get_if<OdometerSystem>(&impl_)) return o;
  if (const auto* o = std::get_if<PointedOdometer>(&impl_)) return &o->inner();
  return nullptr;
}

// --- operations -----------------------------------------------------------

Rat ladder_embed(const Point& pt) { return LadderSystem::embed(pt); }

Rat odometer_dist(const OdometerSystem& sys, std::int64_t x, std::int64_t y) {
  return sys.dist(Point::residue(x), Point::residue(y));
}

CylinderPartition cylinder_partition(const OdometerSystem& sys, int level) {
  if (level < 1 || level > sys.depth()) {
    throw std::out_of_range("cylinder level " + std::to_string(level) + " outside [1," +
                            std::to_string(sys.depth()) + "]");
  }
  CylinderPartition part;
  part.level = level;
  part.modulus = sys.modulus(level);
  part.classes.resize(static_cast<std::size_t>(part.modulus));
  for (std::int64_t r = 0; r < sys.size(); ++r) {
    part.classes[static_cast<std::size_t>(r % part.modulus)].push_back(Point::residue(r));
  }
  // Members agree on levels 1..k, so they can first differ at k+1 at the
  // earliest. Classes j and j + m_{k-1} agree below k and differ at k.
  part.diameter_bound = level == sys.depth() ? Rat(0) : Rat::pow2_neg(level + 1);
  part.separation = Rat::pow2_neg(level);
  return part;
}

PseudoOrbit pointed_gamma(const PointedOdometer& sys, int K, std::size_t window) {
  const auto& odo = sys.inner();
  if (K < 2 || K > odo.depth()) {
    throw std::out_of_range("K must satisfy 2 <= K <= depth (" + std::to_string(odo.depth()) + ")");
  }
  if (window == 0) throw std::out_of_range("window must be >= 1");
  std::vector<Point> pts;
  pts.reserve(window);
  pts.push_back(Point::extra());
  Point x = Point::residue(odo.reduce(odo.modulus(K - 1)));
  while (pts.size() < window) {
    pts.push_back(x);
    x = odo.eval(x);
  }
  return PseudoOrbit(System::pointed(sys), std::move(pts));
}

KnownSets known_sets(const System& sys) {
  KnownSet s;
  if (sys.kind() == SystemKind::Ladder) {
    s.points = {Point::fixed_zero(), Point::fixed_one(), Point::fixed_two()};
  } else {
    s.kind = KnownSet::Kind::AllResidues;
  }
  return {s, s, s};
}

std::vector<Point> fixed_points(const System& sys, std::int64_t ladder_range) {
  std::vector<Point> out;
  for (const auto& c : sys.candidates(ladder_range)) {
    if (sys.eval(c) == c) out.push_back(c);
  }
  return out;
}

}  // namespace shadowlab
