#include "shadowlab/pseudo.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace shadowlab {

IndexSet make_index_set(std::vector<std::size_t> raw) {
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  return raw;
}

std::string index_set_str(const IndexSet& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(s[i]);
  }
  return out + "]";
}

// --- PseudoOrbit ----------------------------------------------------------

PseudoOrbit::PseudoOrbit(System sys, std::vector<Point> points, std::vector<ScheduleLevel> schedule,
                         std::vector<std::size_t> junctions)
    : sys_(std::move(sys)),
      points_(std::move(points)),
      schedule_(std::move(schedule)),
      junctions_(std::move(junctions)) {
  if (points_.empty()) throw std::invalid_argument("pseudo orbit needs at least one point");
  for (const auto& p : points_) {
    if (!sys_.contains(p)) throw std::invalid_argument("point " + p.str() + " not in " + sys_.id());
  }
  errors_ = recompute_errors();
}

std::vector<Rat> PseudoOrbit::recompute_errors() const {
  std::vector<Rat> e;
  e.reserve(points_.size() - 1);
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    e.push_back(sys_.dist(sys_.eval(points_[i]), points_[i + 1]));
  }
  return e;
}

Rat PseudoOrbit::max_error() const { return max_error_from(0); }

Rat PseudoOrbit::max_error_from(std::size_t from) const {
  Rat m(0);
  for (std::size_t i = from; i < errors_.size(); ++i) {
    if (errors_[i] > m) m = errors_[i];
  }
  return m;
}

bool PseudoOrbit::satisfies_schedule() const {
  return std::all_of(schedule_.begin(), schedule_.end(),
                     [&](const ScheduleLevel& lv) { return max_error_from(lv.index) <= lv.bound; });
}

PseudoOrbit PseudoOrbit::with_schedule(std::vector<ScheduleLevel> schedule) const {
  return PseudoOrbit(sys_, points_, std::move(schedule), junctions_);
}

std::string PseudoOrbit::serialize() const {
  std::ostringstream os;
  os << "pseudo-orbit\n";
  os << "system " << sys_.id() << "\n";
  os << "points";
  for (const auto& p : points_) os << ' ' << p.str();
  os << "\n";
  os << "schedule";
  for (const auto& lv : schedule_) os << ' ' << lv.index << ':' << lv.bound.str();
  os << "\n";
  return os.str();
}

PseudoOrbit PseudoOrbit::parse(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  if (!std::getline(is, line) || line != "pseudo-orbit") {
    throw std::invalid_argument("pseudo orbit record must start with 'pseudo-orbit'");
  }
  std::optional<System> sys;
  std::vector<Point> pts;
  std::vector<ScheduleLevel> schedule;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    std::string tok;
    if (key == "system") {
      ls >> tok;
      sys = System::from_id(tok);
    } else if (key == "points") {
      if (!sys) throw std::invalid_argument("pseudo orbit record: 'system' must precede 'points'");
      while (ls >> tok) pts.push_back(sys->parse_point(tok));
    } else if (key == "schedule") {
      while (ls >> tok) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("bad schedule entry '" + tok + "'");
        schedule.push_back({std::stoull(tok.substr(0, colon)), Rat::parse(tok.substr(colon + 1))});
      }
    } else if (!key.empty()) {
      throw std::invalid_argument("unknown pseudo orbit field '" + key + "'");
    }
  }
  if (!sys) throw std::invalid_argument("pseudo orbit record without system");
  return PseudoOrbit(*sys, std::move(pts), std::move(schedule));
}

// --- constructions --------------------------------------------------------

PseudoOrbit from_orbit(const System& sys, const Point& x, std::size_t length) {
  if (length == 0) throw std::invalid_argument("orbit window must be >= 1");
  std::vector<Point> pts{x};
  while (pts.size() < length) pts.push_back(sys.eval(pts.back()));
  return PseudoOrbit(sys, std::move(pts));
}

PseudoOrbit concat_chains(const System& sys, const std::vector<std::vector<Point>>& chains) {
  if (chains.empty()) throw std::invalid_argument("concat_chains: empty chain list");
  std::vector<Point> pts;
  std::vector<std::size_t> junctions;
  for (const auto& c : chains) {
    if (c.empty()) throw std::invalid_argument("concat_chains: empty chain");
    if (!pts.empty()) junctions.push_back(pts.size() - 1);
    pts.insert(pts.end(), c.begin(), c.end());
  }
  return PseudoOrbit(sys, std::move(pts), {}, std::move(junctions));
}

PseudoOrbit cycles_concat(const System& sys, const std::vector<DeclaredCycle>& cycles) {
  if (cycles.empty()) throw std::invalid_argument("cycles_concat: empty cycle list");
  const Point anchor = cycles.front().points.empty() ? Point{} : cycles.front().points.front();
  std::vector<Point> pts;
  std::vector<ScheduleLevel> schedule;
  std::vector<std::size_t> junctions;
  for (std::size_t k = 0; k < cycles.size(); ++k) {
    const auto& c = cycles[k];
    const std::string where = "cycle " + std::to_string(k);
    if (c.points.size() < 2) throw std::invalid_argument(where + " needs at least 2 points");
    if (c.points.front() != anchor || c.points.back() != anchor) {
      throw std::invalid_argument(where + " does not start and end at " + anchor.str());
    }
    if (k > 0 && c.delta > cycles[k - 1].delta) {
      throw std::invalid_argument(where + ": declared deltas must be nonincreasing");
    }
    const PseudoOrbit piece(sys, c.points);
    if (!piece.is_delta(c.delta)) {
      throw std::invalid_argument(where + " has error " + piece.max_error().str() +
                                  " above its declared delta " + c.delta.str());
    }
    const std::size_t start = pts.empty() ? 0 : pts.size() - 1;
    if (!pts.empty()) junctions.push_back(start);
    schedule.push_back({start, c.delta});
    pts.insert(pts.end(), c.points.begin() + (pts.empty() ? 0 : 1), c.points.end());
  }
  PseudoOrbit out(sys, std::move(pts), std::move(schedule), std::move(junctions));
  // The elided junction point is shared, so every error lies inside one cycle.
  if (!out.satisfies_schedule()) throw std::logic_error("cycles_concat: suffix bound violated");
  return out;
}

ErgodicOrbit ergodic_po(const System& sys, const Point& x, std::size_t length, const IndexSet& bad,
                        const JumpPicker& jump) {
  if (length == 0) throw std::invalid_argument("ergodic_po: window must be >= 1");
  const std::size_t steps = length - 1;
  for (const auto i : bad) {
    if (i >= steps) throw std::invalid_argument("ergodic_po: bad index " + std::to_string(i) + " outside window");
  }
  std::vector<Point> pts{x};
  IndexSet good;
  for (std::size_t i = 0; i < steps; ++i) {
    const Point image = sys.eval(pts.back());
    if (std::binary_search(bad.begin(), bad.end(), i)) {
      pts.push_back(jump(i, image));
    } else {
      pts.push_back(image);
      good.push_back(i);
    }
  }
  auto density = density_profile(good, steps);
  return {PseudoOrbit(sys, std::move(pts)), std::move(good), std::move(density)};
}

DensityProfile density_profile(const IndexSet& subset, std::size_t length) {
  DensityProfile d{subset, length, {}};
  d.running.reserve(length);
  std::size_t hits = 0;
  auto it = subset.begin();
  for (std::size_t n = 1; n <= length; ++n) {
    while (it != subset.end() && *it < n) {
      ++hits;
      ++it;
    }
    d.running.emplace_back(static_cast<std::int64_t>(hits), static_cast<std::int64_t>(n));
  }
  if (it != subset.end()) throw std::invalid_argument("density_profile: index outside [0, L)");
  return d;
}

LongestRun longest_run(const IndexSet& subset, std::size_t length) {
  LongestRun r{subset, 0, 0};
  std::size_t cur = 0;
  std::size_t cur_start = 0;
  std::size_t prev = 0;
  for (std::size_t k = 0; k < subset.size(); ++k) {
    const auto i = subset[k];
    if (i >= length) throw std::invalid_argument("longest_run: index outside [0, L)");
    if (cur > 0 && i == prev + 1) {
      ++cur;
    } else {
      cur = 1;
      cur_start = i;
    }
    prev = i;
    if (cur > r.length) {
      r.length = cur;
      r.start = cur_start;
    }
  }
  return r;
}

// --- tail analytics -------------------------------------------------------

OmegaEstimate omega_estimate(const PseudoOrbit& po, const Rat& tail_fraction) {
  if (tail_fraction.sign() <= 0 || tail_fraction > Rat(1)) {
    throw std::invalid_argument("tail fraction must lie in (0, 1]");
  }
  const auto L = static_cast<std::int64_t>(po.size());
  // ceil(tail * L) with exact integer arithmetic.
  const mpz_class scaled = tail_fraction.num() * L;
  mpz_class tail_len;
  mpz_cdiv_q(tail_len.get_mpz_t(), scaled.get_mpz_t(), tail_fraction.den().get_mpz_t());
  const auto tail = static_cast<std::size_t>(tail_len.get_si());
  OmegaEstimate est;
  est.tail_start = po.size() - tail;
  std::set<Point> seen(po.points().begin() + static_cast<std::ptrdiff_t>(est.tail_start), po.points().end());
  est.points.assign(seen.begin(), seen.end());

  bool exact_tail = true;
  for (std::size_t i = est.tail_start; i + 1 < po.size(); ++i) {
    if (!po.errors()[i].is_zero()) {
      exact_tail = false;
      break;
    }
  }
  bool returns = false;
  if (exact_tail) {
    const Point& first = po[est.tail_start];
    for (std::size_t i = est.tail_start + 1; i < po.size() && !returns; ++i) returns = po[i] == first;
  }
  est.exact = exact_tail && returns;
  return est;
}

Rat distance_to_cr(const System& sys, const Point& x) {
  const auto cr = known_sets(sys).chain_recurrent;
  if (cr.contains(x)) return Rat(0);
  if (cr.kind == KnownSet::Kind::AllResidues) {
    // Only the pointed odometer's extra point lies outside; all residues are
    // at the same distance from it.
    return sys.dist(x, Point::residue(0));
  }
  Rat best = sys.dist(x, cr.points.front());
  for (const auto& c : cr.points) best = min(best, sys.dist(x, c));
  return best;
}

VerificationReport check_omega_in_cr(const PseudoOrbit& po, const Rat& tail_fraction) {
  VerificationReport rep("omega-in-CR", "omega(gamma) is contained in CR(f)");
  rep.param("system", po.system().id())
      .param("window", static_cast<std::int64_t>(po.size()))
      .param("tail_fraction", tail_fraction);
  const auto est = omega_estimate(po, tail_fraction);
  const auto cr = known_sets(po.system()).chain_recurrent;
  rep.witness("omega_estimate", join_points(est.points));
  rep.witness("omega_kind", est.exact ? "exact (periodic exact tail)" : "estimate (tail occurrences)");

  // Suffix envelope sup_{j >= i} d(x_j, CR) is nonincreasing by construction;
  // report its value at the start of the tail and at the last entry.
  Rat envelope(0);
  Rat at_tail_start(0);
  for (std::size_t i = po.size(); i-- > 0;) {
    envelope = max(envelope, distance_to_cr(po.system(), po[i]));
    if (i == est.tail_start) at_tail_start = envelope;
  }
  rep.witness("tail_sup_distance_to_CR", at_tail_start);
  rep.witness("final_distance_to_CR", distance_to_cr(po.system(), po[po.size() - 1]));
  for (const auto& p : est.points) {
    if (!cr.contains(p)) return rep.fail("omega estimate contains non chain recurrent point " + p.str());
  }
  return rep;
}

CrLift nearest_cr_lift(const PseudoOrbit& po) {
  const System& sys = po.system();
  const auto cr = known_sets(sys).chain_recurrent;
  std::vector<Point> cr_points = cr.points;
  if (cr.kind == KnownSet::Kind::AllResidues) {
    const auto* odo = sys.odometer_part();
    if (odo == nullptr) throw std::invalid_argument("nearest_cr_lift: chain recurrent set is not enumerable");
    cr_points = odo->candidates();
  }
  std::vector<Point> lifted;
  std::vector<Rat> dists;
  lifted.reserve(po.size());
  for (const auto& x : po.points()) {
    if (cr.contains(x)) {
      lifted.push_back(x);
      dists.emplace_back(0);
      continue;
    }
    // Canonical order plus strict improvement gives the canonical tie-break.
    std::size_t best = 0;
    Rat best_d = sys.dist(x, cr_points[0]);
    for (std::size_t c = 1; c < cr_points.size(); ++c) {
      Rat d = sys.dist(x, cr_points[c]);
      if (d < best_d) {
        best_d = std::move(d);
        best = c;
      }
    }
    lifted.push_back(cr_points[best]);
    dists.push_back(std::move(best_d));
  }
  CrLift out{PseudoOrbit(sys, lifted), std::move(dists), {}, true};
  for (std::size_t i = 0; i + 1 < po.size(); ++i) {
    Rat bound = sys.dist(sys.eval(lifted[i]), sys.eval(po[i])) + po.errors()[i] + out.lift_distances[i + 1];
    if (out.lifted.errors()[i] > bound) out.bounds_hold = false;
    out.error_bounds.push_back(std::move(bound));
  }
  return out;
}

}  // namespace shadowlab
