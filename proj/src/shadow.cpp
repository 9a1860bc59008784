#include "shadowlab/shadow.hpp"

#include <algorithm>
#include <stdexcept>

namespace shadowlab {

Rat ShadowDefect::max_defect_from(std::size_t from) const {
  Rat m(0);
  for (std::size_t i = from; i < defects.size(); ++i) m = max(m, defects[i]);
  return m;
}

Rat ShadowDefect::min_defect_from(std::size_t from) const {
  if (from >= defects.size()) return Rat(0);
  Rat m = defects[from];
  for (std::size_t i = from + 1; i < defects.size(); ++i) m = min(m, defects[i]);
  return m;
}

ShadowDefect shadow_defect(const PseudoOrbit& po, const Point& y) {
  const System& sys = po.system();
  ShadowDefect d{y, {}, Rat(0)};
  d.defects.reserve(po.size());
  Point z = y;
  for (std::size_t i = 0; i < po.size(); ++i) {
    if (i > 0) z = sys.eval(z);
    d.defects.push_back(sys.dist(po[i], z));
    d.max_defect = max(d.max_defect, d.defects.back());
  }
  return d;
}

namespace {

// Early-exit variant of shadow_defect(...).max_defect <= eps.
bool shadows(const PseudoOrbit& po, const Point& y, const Rat& eps) {
  const System& sys = po.system();
  Point z = y;
  for (std::size_t i = 0; i < po.size(); ++i) {
    if (i > 0) z = sys.eval(z);
    if (sys.dist(po[i], z) > eps) return false;
  }
  return true;
}

}  // namespace

std::vector<Point> find_shadows(const PseudoOrbit& po, const Rat& eps, const std::vector<Point>& candidates) {
  std::vector<Point> out;
  for (const auto& c : candidates) {
    if (shadows(po, c, eps)) out.push_back(c);
  }
  return out;
}

NoShadowResult verify_no_shadow(const PseudoOrbit& po, const Rat& eps, std::int64_t range) {
  if (po.system().kind() != SystemKind::Ladder) {
    throw std::invalid_argument("verify_no_shadow: ladder pseudo orbits only");
  }
  NoShadowResult out;
  auto& rep = out.report;
  rep = VerificationReport("ladder-no-shadow", "the delta-chain is not eps-shadowed by any point of X");
  rep.param("eps", eps).param("range", range).param("chain_points", static_cast<std::int64_t>(po.size()));
  rep.witness("pseudo_orbit", join_points(po.points()));
  rep.witness("max_error", po.max_error());

  const auto brute = po.system().candidates(range);
  rep.witness("brute_force_candidates", static_cast<std::int64_t>(brute.size()));
  const auto found = find_shadows(po, eps, brute);
  if (!found.empty()) {
    rep.witness("shadowed_by", found.front());
    rep.fail("pseudo orbit is eps-shadowed");
    return out;
  }

  // Orbits of s(n) stay in (0,1) and orbits of t(n) in (1,2). An entry at
  // distance >= eps from the closed interval beats eps strictly on the open one.
  struct Enclosure {
    const char* member_class;
    const char* interval;
    Rat lo, hi;
  };
  const std::string tail = ", |n| > " + std::to_string(range);
  const Enclosure classes[] = {{"s(n)", "(0,1)", Rat(0), Rat(1)}, {"t(n)", "(1,2)", Rat(1), Rat(2)}};
  for (const auto& cls : classes) {
    std::optional<ClassCertificate> best;
    for (std::size_t i = 0; i < po.size(); ++i) {
      const Rat v = LadderSystem::embed(po[i]);
      const Rat gap = v < cls.lo ? cls.lo - v : (v > cls.hi ? v - cls.hi : Rat(0));
      if (gap >= eps && (!best || gap > best->bound)) {
        best = ClassCertificate{std::string(cls.member_class) + tail, cls.interval, i, gap};
      }
    }
    if (!best) {
      rep.fail(std::string("no certificate excludes class ") + cls.member_class + tail);
      return out;
    }
    rep.witness("certificate " + best->member_class,
                "orbits in " + best->enclosure + ", entry " + std::to_string(best->index) + " = " +
                    po[best->index].str() + " at distance >= " + best->bound.str());
    out.certificates.push_back(std::move(*best));
  }
  return out;
}

Rat odometer_shadow_modulus(const OdometerSystem& sys, const Rat& eps) {
  if (eps.sign() <= 0) throw std::invalid_argument("odometer_shadow_modulus: eps must be > 0");
  // Level-k cylinder diameter: 2^{-(k+1)} below the truncation depth, 0 at it.
  int k = 0;
  while (k < sys.depth() && Rat::pow2_neg(k + 1) > eps) ++k;
  return Rat::pow2_neg(k + 1);
}

VerificationReport check_pi_property(const PseudoOrbit& po, const Rat& delta) {
  VerificationReport rep("pi-property", "d(f^{i-j}(x_j), f^{i-j-1}(x_{j+1})) <= delta for 0 <= j <= i-1");
  rep.param("system", po.system().id()).param("delta", delta).param("window", static_cast<std::int64_t>(po.size()));
  const System& sys = po.system();
  // pushed[j] = f^{i-j}(x_j) for the current i.
  std::vector<Point> pushed;
  pushed.reserve(po.size());
  pushed.push_back(po[0]);
  std::int64_t checks = 0;
  for (std::size_t i = 1; i < po.size(); ++i) {
    for (auto& p : pushed) p = sys.eval(p);
    pushed.push_back(po[i]);
    for (std::size_t j = 0; j < i; ++j) {
      ++checks;
      const Rat d = sys.dist(pushed[j], pushed[j + 1]);
      if (d > delta) {
        rep.witness("i", static_cast<std::int64_t>(i)).witness("j", static_cast<std::int64_t>(j));
        rep.witness("distance", d);
        return rep.fail("property fails at (i,j)");
      }
    }
  }
  rep.witness("checks", checks);
  return rep;
}

Point random_delta_step(const System& sys, const Point& image, const Rat& delta, std::mt19937_64& rng,
                        std::int64_t ladder_range) {
  if (sys.kind() == SystemKind::Odometer) {
    const auto& odo = *sys.odometer_part();
    const auto step = odo.modulus(odo.agreement_levels(delta));
    std::uniform_int_distribution<std::int64_t> pick(0, odo.size() / step - 1);
    return Point::residue(image.index % step + pick(rng) * step);
  }
  const auto ball = sys.ball(image, delta, ladder_range);
  if (ball.empty()) return image;
  std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);
  return ball[pick(rng)];
}

VerificationReport chain_continuity_check(const System& sys, const Point& x, const Rat& eps, const Rat& delta,
                                          std::size_t trials, std::size_t length, std::uint64_t seed,
                                          std::int64_t ladder_range) {
  VerificationReport rep("chain-continuity", "every delta-pseudo orbit from x is eps-shadowed by x itself");
  rep.param("system", sys.id()).param("x", x.str()).param("eps", eps).param("delta", delta);
  rep.param("trials", static_cast<std::int64_t>(trials)).param("length", static_cast<std::int64_t>(length));
  if (sys.kind() == SystemKind::Ladder) rep.param("range", ladder_range);
  rep.seed = seed;
  if (length == 0) return rep.fail("length must be >= 1");

  std::mt19937_64 rng(seed);
  std::int64_t failures = 0;
  std::vector<Point> pts;
  for (std::size_t t = 0; t < trials; ++t) {
    pts.assign(1, x);
    Point truth = x;
    std::optional<std::size_t> bad;
    Rat bad_defect;
    for (std::size_t i = 1; i < length; ++i) {
      pts.push_back(random_delta_step(sys, sys.eval(pts.back()), delta, rng, ladder_range));
      truth = sys.eval(truth);
      if (!bad) {
        Rat d = sys.dist(pts.back(), truth);
        if (d > eps) {
          bad = i;
          bad_defect = std::move(d);
        }
      }
    }
    if (bad) {
      if (failures == 0) {
        rep.witness("first_failure_trial", static_cast<std::int64_t>(t));
        rep.witness("first_failure_index", static_cast<std::int64_t>(*bad));
        const std::vector<Point> prefix(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(*bad + 1));
        rep.witness("first_failure_prefix", join_points(prefix));
        rep.witness("first_failure_defect", bad_defect);
      }
      ++failures;
    }
  }
  rep.witness("failures", failures);
  if (failures > 0) rep.fail("some delta-pseudo orbit is not eps-shadowed by x");
  return rep;
}

VerificationReport exhaustive_shadow_check(const OdometerSystem& odo, const Rat& eps, std::size_t length) {
  const Rat delta = odometer_shadow_modulus(odo, eps);
  VerificationReport rep("exhaustive-shadow", "any delta-pseudo orbit is eps-shadowed by x_0");
  rep.param("system", System::odometer(odo).id()).param("eps", eps).param("delta", delta);
  rep.param("length", static_cast<std::int64_t>(length));
  if (length == 0) return rep.fail("length must be >= 1");

  const auto step = odo.modulus(odo.agreement_levels(delta));
  const std::int64_t branching = odo.size() / step;
  std::int64_t enumerated = 0;
  std::int64_t failures = 0;
  // Depth-first over all (x_0, ..., x_{L-1}) with d(f(x_i), x_{i+1}) <= delta.
  std::vector<std::int64_t> path(length);
  std::vector<std::int64_t> choice(length, 0);
  for (std::int64_t start = 0; start < odo.size(); ++start) {
    path[0] = start;
    std::size_t depth = 1;
    if (length == 1) {
      ++enumerated;
      continue;
    }
    choice[1] = 0;
    while (depth > 0) {
      if (depth == length) {
        ++enumerated;
        for (std::size_t i = 0; i < length; ++i) {
          const auto truth = odo.reduce(start + static_cast<std::int64_t>(i));
          if (odometer_dist(odo, path[i], truth) > eps) {
            if (failures++ == 0) rep.witness("first_failure_start", start);
            break;
          }
        }
        --depth;
        continue;
      }
      if (choice[depth] == branching) {
        --depth;
        continue;
      }
      const auto image = odo.reduce(path[depth - 1] + 1);
      path[depth] = image % step + choice[depth] * step;
      ++choice[depth];
      ++depth;
      if (depth < length) choice[depth] = 0;
    }
  }
  rep.witness("pseudo_orbits_enumerated", enumerated);
  rep.witness("failures", failures);
  if (failures > 0) rep.fail("some delta-pseudo orbit is not eps-shadowed by x_0");
  return rep;
}

namespace {

// max_j d(x_{i+j}, f^j(x_i)) over the window.
Rat tail_deviation(const PseudoOrbit& po, std::size_t i) {
  const System& sys = po.system();
  Rat worst(0);
  Point z = po[i];
  for (std::size_t k = i + 1; k < po.size(); ++k) {
    z = sys.eval(z);
    worst = max(worst, sys.dist(po[k], z));
  }
  return worst;
}

}  // namespace

std::vector<ScheduleLevel> derive_limit_schedule(const PseudoOrbit& po, std::size_t levels) {
  std::vector<ScheduleLevel> out;
  std::size_t i = 0;
  for (std::size_t n = 1; n <= levels; ++n) {
    const Rat bound = Rat::pow2_neg(static_cast<std::int64_t>(n));
    while (i + 1 < po.size() && tail_deviation(po, i) > bound) ++i;
    out.push_back({i, bound});
  }
  return out;
}

LimitShadowResult limit_shadow_construct(const PseudoOrbit& po) {
  const System& sys = po.system();
  if (!sys.has_inverse() || !sys.is_isometry()) {
    throw std::invalid_argument("limit_shadow_construct: needs an invertible isometric system");
  }
  const auto& schedule = po.schedule();
  if (schedule.empty()) throw std::invalid_argument("limit_shadow_construct: empty schedule");
  for (std::size_t n = 1; n < schedule.size(); ++n) {
    if (schedule[n].index < schedule[n - 1].index) {
      throw std::invalid_argument("limit_shadow_construct: schedule indices must be nondecreasing");
    }
    if (schedule[n].index >= po.size()) throw std::invalid_argument("limit_shadow_construct: index outside window");
  }

  LimitShadowResult out;
  auto& rep = out.report;
  rep = VerificationReport("limit-shadow-construction",
                           "y_n = f^{-i_n}(x_{i_n}) converges to y with d(x_{i_n+j}, f^{i_n+j}(y)) <= 3*2^{-n}");
  rep.param("system", sys.id()).param("window", static_cast<std::int64_t>(po.size()));
  rep.param("levels", static_cast<std::int64_t>(schedule.size()));
  std::string idx;
  for (const auto& lv : schedule) idx += (idx.empty() ? "" : ",") + std::to_string(lv.index);
  rep.param("indices", "[" + idx + "]");

  const auto level_bound = [](std::size_t n) { return Rat::pow2_neg(static_cast<std::int64_t>(n)); };

  // (a) tail tracking at each level.
  for (std::size_t n = 1; n <= schedule.size(); ++n) {
    const auto i = schedule[n - 1].index;
    out.indices.push_back(i);
    const Rat dev = tail_deviation(po, i);
    if (dev > level_bound(n)) {
      rep.witness("level", static_cast<std::int64_t>(n)).witness("deviation", dev);
      rep.fail("schedule index does not track the tail within 2^{-n}");
      return out;
    }
  }

  for (const auto i : out.indices) {
    Point y = po[i];
    for (std::size_t k = 0; k < i; ++k) y = sys.inverse(y);
    out.approximants.push_back(y);
  }
  const std::size_t levels = out.approximants.size();
  for (std::size_t n = 1; n < levels; ++n) {
    const Rat d = sys.dist(out.approximants[n - 1], out.approximants[n]);
    if (d > level_bound(n)) {
      rep.witness("level", static_cast<std::int64_t>(n)).witness("cauchy_distance", d);
      rep.fail("d(y_n, y_{n+1}) exceeds 2^{-n}");
      return out;
    }
  }
  out.limit = out.approximants.back();
  out.stabilized_at = levels;
  while (out.stabilized_at > 1 && out.approximants[out.stabilized_at - 2] == out.limit) --out.stabilized_at;
  rep.witness("approximants", join_points(out.approximants));
  rep.witness("limit", out.limit);
  rep.witness("stabilized_at_level", static_cast<std::int64_t>(out.stabilized_at));

  // (b) and the final tracking bound against the limit.
  std::int64_t checks = 0;
  Rat worst_ratio(0);
  for (std::size_t n = 1; n <= levels; ++n) {
    const Rat dy = sys.dist(out.approximants[n - 1], out.limit);
    if (dy > Rat(2) * level_bound(n)) {
      rep.witness("level", static_cast<std::int64_t>(n)).witness("distance_to_limit", dy);
      rep.fail("d(y_n, y) exceeds 2^{-n+1}");
      return out;
    }
    const auto i = out.indices[n - 1];
    const Rat bound = Rat(3) * level_bound(n);
    Point z = out.limit;
    for (std::size_t k = 0; k < i; ++k) z = sys.eval(z);
    for (std::size_t k = i; k < po.size(); ++k) {
      const Rat d = sys.dist(po[k], z);
      ++checks;
      if (d > bound) {
        rep.witness("level", static_cast<std::int64_t>(n)).witness("index", static_cast<std::int64_t>(k));
        rep.witness("defect", d);
        rep.fail("d(x_{i_n+j}, f^{i_n+j}(y)) exceeds 3*2^{-n}");
        return out;
      }
      worst_ratio = max(worst_ratio, d / bound);
      z = sys.eval(z);
    }
  }
  rep.witness("bound_checks", checks);
  rep.witness("max_defect_over_bound", worst_ratio);
  rep.witness("final_level_tail_defect", shadow_defect(po, out.limit).max_defect_from(out.indices.back()));
  return out;
}

ThickShadowResult thick_shadow_report(const PseudoOrbit& po, const Rat& eps, const std::vector<Point>& candidates) {
  if (candidates.empty()) throw std::invalid_argument("thick_shadow_report: no candidates");
  std::optional<ThickShadowResult> best;
  for (const auto& c : candidates) {
    const auto d = shadow_defect(po, c);
    IndexSet agree;
    for (std::size_t i = 0; i < d.defects.size(); ++i) {
      if (d.defects[i] <= eps) agree.push_back(i);
    }
    auto run = longest_run(agree, po.size());
    if (!best || run.length > best->run.length ||
        (run.length == best->run.length && agree.size() > best->agreement.size())) {
      auto density = density_profile(agree, po.size());
      best = ThickShadowResult{c, std::move(agree), std::move(density), std::move(run)};
    }
  }
  return std::move(*best);
}

VerificationReport slimit_counterexample(const PointedOdometer& sys, int K, std::size_t window) {
  const auto& odo = sys.inner();
  VerificationReport rep("s-limit-counterexample",
                         "every 1-shadowing point of gamma is p, and d(x_j, f^j(p)) >= 2^{-K} for j >= 1");
  rep.param("system", System::pointed(sys).id()).param("K", static_cast<std::int64_t>(K));
  rep.param("window", static_cast<std::int64_t>(window));

  // (i) construction
  const PseudoOrbit gamma = pointed_gamma(sys, K, window);
  const Rat bound = Rat::pow2_neg(K);
  rep.witness("r", window > 1 ? gamma[1].str() : std::string("-"));
  if (window < 2) {
    rep.witness("note", "window holds only x_0; the tail stages are vacuous");
    rep.status = Status::InsufficientWindow;
    return rep;
  }

  // (ii) one-step errors
  rep.witness("e_0", gamma.errors()[0]);
  if (gamma.errors()[0] != bound) return rep.fail("e_0 differs from 2^{-K}");
  if (!gamma.max_error_from(1).is_zero()) return rep.fail("gamma is not exact after index 0");
  rep.witness("max_error", gamma.max_error());

  // (iii) the only 1-shadow among p and all residues
  const auto shadows = find_shadows(gamma, Rat(1), sys.candidates());
  rep.witness("one_shadows", join_points(shadows));
  rep.witness("candidates_checked", static_cast<std::int64_t>(sys.candidates().size()));
  if (shadows != std::vector<Point>{Point::extra()}) return rep.fail("1-shadowing set is not {p}");

  // (iv) the tail never comes closer than 2^{-K} to the orbit of p
  const auto defect = shadow_defect(gamma, Point::extra());
  const Rat min_tail = defect.min_defect_from(1);
  rep.witness("min_tail_defect", min_tail);
  rep.witness("tail_bound", bound);
  const System full = System::pointed(sys);
  Point fp = Point::extra();
  const auto mK = odo.modulus(K);
  const auto shift = odo.modulus(K - 1) % mK;
  for (std::size_t j = 1; j < window; ++j) {
    fp = full.eval(fp);
    if (defect.defects[j] < bound) {
      rep.witness("j", static_cast<std::int64_t>(j));
      return rep.fail("d(x_j, f^j(p)) < 2^{-K}");
    }
    if (((gamma[j].index - fp.index) % mK + mK) % mK != shift) {
      rep.witness("j", static_cast<std::int64_t>(j));
      return rep.fail("coordinate-K offset differs from m_{K-1}");
    }
  }
  return rep;
}

}  // namespace shadowlab
