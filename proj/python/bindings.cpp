#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shadowlab/chains.hpp"
#include "shadowlab/experiments.hpp"
#include "shadowlab/shadow.hpp"

namespace py = pybind11;
using namespace shadowlab;

// Rat <-> fractions.Fraction. Also accepts int and "n/d" strings.
namespace pybind11::detail {
template <>
struct type_caster<Rat> {
  PYBIND11_TYPE_CASTER(Rat, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src) return false;
    try {
      if (py::isinstance<py::str>(src)) {
        value = Rat::parse(src.cast<std::string>());
        return true;
      }
      if (py::hasattr(src, "numerator") && py::hasattr(src, "denominator")) {
        const std::string n = py::str(src.attr("numerator"));
        const std::string d = py::str(src.attr("denominator"));
        value = Rat::parse(n + "/" + d);
        return true;
      }
    } catch (const std::invalid_argument&) {
      return false;
    }
    return false;
  }

  static handle cast(const Rat& r, return_value_policy, handle) {
    return py::module_::import("fractions").attr("Fraction")(r.str()).release();
  }
};
}  // namespace pybind11::detail

namespace {

OdometerSystem make_odometer(const std::optional<std::vector<std::int64_t>>& periods, int depth) {
  return periods ? OdometerSystem(*periods) : OdometerSystem::dyadic(depth);
}

py::dict pairs_dict(const std::vector<std::pair<std::string, std::string>>& kv) {
  py::dict d;
  for (const auto& [k, v] : kv) d[py::str(k)] = v;
  return d;
}

}  // namespace

PYBIND11_MODULE(_shadowlab, m) {
  m.doc() = "Exact shadowing and limit-shadowing workbench";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<Point>(m, "Point")
      .def_static("fixed_zero", &Point::fixed_zero)
      .def_static("fixed_one", &Point::fixed_one)
      .def_static("fixed_two", &Point::fixed_two)
      .def_static("s", &Point::s)
      .def_static("t", &Point::t)
      .def_static("residue", &Point::residue)
      .def_static("extra", &Point::extra)
      .def_static("parse", [](const std::string& text, bool ladder) { return Point::parse(text, ladder); },
                  py::arg("text"), py::arg("ladder") = true)
      .def_readonly("index", &Point::index)
      .def_property_readonly("kind",
                             [](const Point& p) {
                               static const char* names[] = {"fixed_zero", "fixed_one", "fixed_two", "s",
                                                             "t",          "residue",   "extra"};
                               return std::string(names[static_cast<int>(p.kind)]);
                             })
      .def("__str__", &Point::str)
      .def("__repr__", [](const Point& p) { return "Point(" + p.str() + ")"; })
      .def("__eq__", [](const Point& a, const Point& b) { return a == b; })
      .def("__lt__", [](const Point& a, const Point& b) { return a < b; })
      .def("__hash__", [](const Point& p) { return PointHash{}(p); });

  py::class_<System>(m, "System")
      .def_static("ladder", &System::ladder)
      .def_static(
          "odometer",
          [](std::optional<std::vector<std::int64_t>> periods, int depth) {
            return System::odometer(make_odometer(periods, depth));
          },
          py::arg("periods") = py::none(), py::arg("depth") = 6)
      .def_static(
          "pointed",
          [](std::optional<std::vector<std::int64_t>> periods, int depth) {
            return System::pointed(PointedOdometer(make_odometer(periods, depth)));
          },
          py::arg("periods") = py::none(), py::arg("depth") = 6)
      .def_static("from_id", [](const std::string& id) { return System::from_id(id); })
      .def_property_readonly("id", &System::id)
      .def_property_readonly("has_inverse", &System::has_inverse)
      .def_property_readonly("is_isometry", &System::is_isometry)
      .def("eval", &System::eval)
      .def("inverse", &System::inverse)
      .def("dist", &System::dist)
      .def("candidates", &System::candidates, py::arg("ladder_range") = 0)
      .def("ball", &System::ball, py::arg("center"), py::arg("delta"), py::arg("ladder_range") = 0)
      .def("contains", &System::contains)
      .def("point", [](const System& s, const std::string& text) { return s.parse_point(text); })
      .def("__eq__", &System::operator==)
      .def("__repr__", [](const System& s) { return "System(" + s.id() + ")"; });

  py::class_<VerificationReport>(m, "VerificationReport")
      .def_readonly("id", &VerificationReport::id)
      .def_readonly("anchor", &VerificationReport::anchor)
      .def_property_readonly("status", [](const VerificationReport& r) { return to_string(r.status); })
      .def_property_readonly("params", [](const VerificationReport& r) { return pairs_dict(r.params); })
      .def_property_readonly("witnesses", [](const VerificationReport& r) { return pairs_dict(r.witnesses); })
      .def_readonly("seed", &VerificationReport::seed)
      .def("passed", &VerificationReport::passed)
      .def("to_machine", &VerificationReport::to_machine)
      .def("to_text", &VerificationReport::to_text);

  py::class_<RunReport>(m, "RunReport")
      .def_readonly("experiment", &RunReport::experiment)
      .def_readonly("reports", &RunReport::reports)
      .def_readonly("elapsed_ms", &RunReport::elapsed_ms)
      .def_property_readonly("status", [](const RunReport& r) { return to_string(r.overall()); })
      .def("to_machine", &RunReport::to_machine)
      .def("to_text", &RunReport::to_text);

  py::class_<PseudoOrbit>(m, "PseudoOrbit")
      .def(py::init([](const System& sys, std::vector<Point> points) { return PseudoOrbit(sys, std::move(points)); }),
           py::arg("system"), py::arg("points"))
      .def_property_readonly("system", &PseudoOrbit::system)
      .def_property_readonly("points", &PseudoOrbit::points)
      .def_property_readonly("errors", &PseudoOrbit::errors)
      .def_property_readonly("schedule",
                             [](const PseudoOrbit& po) {
                               std::vector<std::pair<std::size_t, Rat>> out;
                               for (const auto& l : po.schedule()) out.emplace_back(l.index, l.bound);
                               return out;
                             })
      .def(
          "with_schedule",
          [](const PseudoOrbit& po, const std::vector<std::pair<std::size_t, Rat>>& levels) {
            std::vector<ScheduleLevel> sched;
            for (const auto& [i, b] : levels) sched.push_back({i, b});
            return po.with_schedule(std::move(sched));
          },
          "Copy carrying the declared (index, bound) decay levels.")
      .def("satisfies_schedule", &PseudoOrbit::satisfies_schedule)
      .def("max_error", &PseudoOrbit::max_error)
      .def("is_delta", &PseudoOrbit::is_delta)
      .def("serialize", &PseudoOrbit::serialize)
      .def_static("parse", [](const std::string& text) { return PseudoOrbit::parse(text); })
      .def("__len__", &PseudoOrbit::size)
      .def("__getitem__", [](const PseudoOrbit& po, std::size_t i) {
        if (i >= po.size()) throw py::index_error();
        return po[i];
      });

  m.def("from_orbit", &from_orbit, py::arg("system"), py::arg("x"), py::arg("length"));
  m.def(
      "pointed_gamma",
      [](int K, std::size_t window, std::optional<std::vector<std::int64_t>> periods, int depth) {
        return pointed_gamma(PointedOdometer(make_odometer(periods, depth)), K, window);
      },
      py::arg("K"), py::arg("window"), py::arg("periods") = py::none(), py::arg("depth") = 6);

  py::class_<ChainGraph>(m, "ChainGraph")
      .def(py::init<System, std::vector<Point>, Rat>(), py::arg("system"), py::arg("vertices"), py::arg("delta"))
      .def_property_readonly("vertices", &ChainGraph::vertices)
      .def_property_readonly("delta", &ChainGraph::delta)
      .def_property_readonly("edge_count", &ChainGraph::edge_count)
      .def("export_adjacency", &ChainGraph::export_adjacency);

  py::class_<ChainComponents>(m, "ChainComponents")
      .def_readonly("delta", &ChainComponents::delta)
      .def_readonly("vertices", &ChainComponents::vertices)
      .def_readonly("components", &ChainComponents::components);

  m.def("scc", [](const ChainGraph& g) { return scc(g).chain_components; },
        "Chain components (cyclic SCCs) of the graph.");
  m.def("chain_recurrent_vertices", &chain_recurrent_vertices);
  m.def("find_chain", &find_chain, py::arg("graph"), py::arg("x"), py::arg("y"));
  m.def("refinement_check", &refinement_check);
  m.def("cr_localization", [](const ChainGraph& g) {
    const auto loc = cr_localization(g);
    return py::make_tuple(loc.bound, loc.farthest, loc.chain_recurrent_count);
  });

  m.def(
      "shadow_defect",
      [](const PseudoOrbit& po, const Point& y) {
        const auto d = shadow_defect(po, y);
        return py::make_tuple(d.max_defect, d.defects);
      },
      "(max_defect, per-index defects) of y against the pseudo orbit.");
  m.def("find_shadows", &find_shadows, py::arg("orbit"), py::arg("eps"), py::arg("candidates"));
  m.def(
      "verify_no_shadow", [](const PseudoOrbit& po, const Rat& eps, std::int64_t range) {
        return verify_no_shadow(po, eps, range).report;
      },
      py::arg("orbit"), py::arg("eps"), py::arg("range") = 16);
  m.def(
      "odometer_shadow_modulus",
      [](const Rat& eps, std::optional<std::vector<std::int64_t>> periods, int depth) {
        return odometer_shadow_modulus(make_odometer(periods, depth), eps);
      },
      py::arg("eps"), py::arg("periods") = py::none(), py::arg("depth") = 8);
  m.def("derive_limit_schedule", [](const PseudoOrbit& po, std::size_t levels) {
    std::vector<std::pair<std::size_t, Rat>> out;
    for (const auto& l : derive_limit_schedule(po, levels)) out.emplace_back(l.index, l.bound);
    return out;
  });
  m.def("limit_shadow_construct", [](const PseudoOrbit& po) {
    const auto r = limit_shadow_construct(po);
    return py::make_tuple(r.limit, r.report);
  });
  m.def(
      "thick_shadow_report",
      [](const PseudoOrbit& po, const Rat& eps, const std::vector<Point>& candidates) {
        const auto t = thick_shadow_report(po, eps, candidates);
        py::dict d;
        d["best"] = t.best;
        d["density"] = t.density.final_density();
        d["run_length"] = t.run.length;
        d["run_start"] = t.run.start;
        d["agreement_size"] = t.agreement.size();
        return d;
      },
      py::arg("orbit"), py::arg("eps"), py::arg("candidates"));
  m.def(
      "slimit_counterexample",
      [](int K, std::size_t window, std::optional<std::vector<std::int64_t>> periods, int depth) {
        return slimit_counterexample(PointedOdometer(make_odometer(periods, depth)), K, window);
      },
      py::arg("K") = 2, py::arg("window") = 128, py::arg("periods") = py::none(), py::arg("depth") = 6);

  m.def(
      "run_experiment",
      [](const std::string& experiment, const py::kwargs& kw) {
        ExperimentConfig c;
        c.experiment = experiment;
        for (const auto& [key, val] : kw) {
          const std::string k = py::str(key);
          if (k == "mode") c.mode = val.cast<std::string>();
          else if (k == "system") c.system = val.cast<std::string>();
          else if (k == "periods") c.periods = val.cast<std::vector<std::int64_t>>();
          else if (k == "depth") c.depth = val.cast<int>();
          else if (k == "K") c.K = val.cast<int>();
          else if (k == "range") c.range = val.cast<std::int64_t>();
          else if (k == "window") c.window = val.cast<std::size_t>();
          else if (k == "eps") c.eps = val.cast<Rat>();
          else if (k == "deltas") c.deltas = val.cast<std::vector<Rat>>();
          else if (k == "trials") c.trials = val.cast<std::size_t>();
          else if (k == "length") c.length = val.cast<std::size_t>();
          else if (k == "seed") c.seed = val.cast<std::uint64_t>();
          else if (k == "plan") c.plan = val.cast<std::string>();
          else throw py::type_error("unknown option '" + k + "'");
        }
        return run_experiment(c);
      },
      py::arg("experiment"),
      "Run one experiment (ex41, ex1, odometer, chains); options match the config keys.");
}
