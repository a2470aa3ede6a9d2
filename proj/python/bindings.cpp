#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gpal/cli.hpp"
#include "gpal/dynamics.hpp"
#include "gpal/games.hpp"
#include "gpal/intervals.hpp"
#include "gpal/model_io.hpp"

namespace py = pybind11;
using namespace gpal;

namespace {

struct Model {
  AnyModel m;
};

Model load_model(const std::string& path) { return {model_from_json(read_json_file(path))}; }
Model model_from_text(const std::string& text) { return {model_from_json(parse_json_text(text))}; }

Locus locus_of(const Model& m, const std::string& at, const std::string& nbhd) { return parse_locus(m.m, at, nbhd); }

std::vector<std::string> formatted_loci(const Model& m) {
  std::vector<std::string> out;
  for (const Locus& l : loci(m.m)) out.push_back(format_locus(m.m, l));
  return out;
}

py::tuple reduce_py(const Formula& f, const std::string& semantics, const std::string& strategy) {
  const Semantics s = parse_semantics(semantics);
  if (strategy != "innermost" && strategy != "outermost")
    throw std::invalid_argument("unknown strategy '" + strategy + "' (expected innermost or outermost)");
  std::vector<RewriteStep> trace;
  const Formula out = strategy == "innermost" ? reduce(f, s, &trace) : reduce_outermost(f, s, &trace);
  py::list rows;
  for (const auto& st : trace) rows.append(py::make_tuple(st.axiom.name(), render(st.before), render(st.after)));
  return py::make_tuple(out, rows);
}

py::dict trace_dict(const LimitTrace& t) {
  py::dict d;
  d["sizes"] = t.sizes;
  d["stage_count"] = t.stage_count;
  d["outcome"] = std::string(outcome_name(t.outcome));
  d["stopped_false_at_locus"] = t.reason == StopReason::FalseAtLocus;
  d["holds_everywhere"] = t.holds_everywhere;
  d["final_model"] = Model{t.final_model};
  d["rendered"] = render_trace(t);
  return d;
}

py::dict axiom_report(const std::string& semantics, int index, std::size_t samples, std::uint64_t seed) {
  const ValidityReport r = check_axiom(AxiomId::make(parse_semantics(semantics), index), samples, seed);
  py::dict d;
  d["axiom"] = r.axiom.name();
  d["seed"] = r.seed;
  d["models_checked"] = r.models_checked;
  d["instances_checked"] = r.instances_checked;
  d["loci_checked"] = r.loci_checked;
  d["failing_instances"] = r.failing_instances;
  d["valid"] = r.failing_instances == 0;
  if (r.minimal) {
    py::dict c;
    c["model"] = Model{r.minimal->model};
    c["at"] = format_locus(r.minimal->model, r.minimal->at);
    c["lhs"] = render(r.minimal->instance.lhs);
    c["rhs"] = render(r.minimal->instance.rhs);
    c["lhs_value"] = r.minimal->lhs_value;
    c["rhs_value"] = r.minimal->rhs_value;
    c["reverified"] = reverify(*r.minimal);
    d["minimal"] = c;
  } else {
    d["minimal"] = py::none();
  }
  return d;
}

std::vector<std::string> payoffs(const std::vector<Rational>& p) {
  std::vector<std::string> out;
  for (const auto& r : p) out.push_back(format_rational(r));
  return out;
}

py::dict game_report(const std::string& json_text) {
  const GameTree t(game_from_json(parse_json_text(json_text)));
  const BackwardInduction bi = backward_induction(t);
  const GameLimit g = bi_via_announcements(t);
  py::dict d;
  d["value"] = payoffs(bi.value);
  d["path"] = bi.path;
  d["generic"] = bi.generic;
  d["sizes"] = g.sizes;
  d["rounds"] = g.rounds;
  d["leaves"] = g.leaves;
  d["matches_backward_induction"] = g.matches_backward_induction;
  d["tree_opens"] = tree_topology(t).opens().size();
  return d;
}

py::dict muddy_report(int n, const std::vector<int>& muddy) {
  const MuddyRun r = run_muddy(n, muddy);
  py::dict d;
  d["n"] = r.n;
  d["muddy"] = r.muddy;
  d["rounds"] = r.rounds;
  d["knows_after"] = r.knows_after;
  d["knows_muddy"] = r.knows_muddy;
  d["summary"] = render_muddy_summary(r);
  return d;
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Topological public announcement logic";

  py::register_exception<ParseError>(mod, "ParseError", PyExc_ValueError);
  py::register_exception<ModelFormatError>(mod, "ModelFormatError", PyExc_ValueError);
  py::register_exception<UnsupportedOperator>(mod, "UnsupportedOperator", PyExc_ValueError);

  py::class_<Formula>(mod, "Formula")
      .def("__str__", [](const Formula& f) { return render(f); })
      .def("__repr__", [](const Formula& f) { return "Formula('" + render(f) + "')"; })
      .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
      .def("__hash__", [](const Formula& f) { return py::hash(py::str(render(f))); })
      .def_property_readonly("op", [](const Formula& f) { return std::string(op_name(f.op())); })
      .def_property_readonly("complexity", [](const Formula& f) { return complexity(f); })
      .def_property_readonly("depth", [](const Formula& f) { return depth(f); })
      .def_property_readonly("size", [](const Formula& f) { return size(f); })
      .def_property_readonly("atoms", [](const Formula& f) { return atoms(f); })
      .def_property_readonly("has_announcement", [](const Formula& f) { return contains_announcement(f); })
      .def_property_readonly("is_boolean", [](const Formula& f) { return is_boolean(f); });

  mod.def("parse", [](const std::string& text) { return parse(text); }, py::arg("text"));

  py::class_<Model>(mod, "Model")
      .def_static("load", &load_model, py::arg("path"))
      .def_static("from_json", &model_from_text, py::arg("text"))
      .def("to_json", [](const Model& m) { return dump_model(m.m); })
      .def_property_readonly("kind", [](const Model& m) { return std::string(semantics_name(semantics_of(m.m))); })
      .def_property_readonly("size", [](const Model& m) { return model_size(m.m); })
      .def("loci", &formatted_loci)
      .def("truth_table", [](const Model& m, const Formula& f) { return truth_table(m.m, f); }, py::arg("formula"))
      .def("holds", [](const Model& m, const Formula& f, const std::string& at, const std::string& nbhd) {
            return holds_at(m.m, locus_of(m, at, nbhd), f);
          }, py::arg("formula"), py::arg("at"), py::arg("nbhd") = "")
      .def("valid", [](const Model& m, const Formula& f) {
            for (bool b : truth_table(m.m, f)) if (!b) return false;
            return true;
          }, py::arg("formula"))
      .def("update", [](const Model& m, const Formula& f) { return Model{update_any(m.m, f)}; }, py::arg("formula"))
      .def("equivalent", [](const Model& m, const Formula& f, const Formula& g) {
            return equivalent_on(m.m, f, g).equivalent;
          }, py::arg("f"), py::arg("g"))
      .def("limit", [](const Model& m, const Formula& f) { return trace_dict(limit_model(m.m, f)); }, py::arg("formula"))
      .def("limit_at", [](const Model& m, const Formula& f, const std::string& at, const std::string& nbhd) {
            const LimitTrace t = announce_while_true(m.m, locus_of(m, at, nbhd), f);
            py::dict d = trace_dict(t);
            d["tracked_locus"] = format_locus(t.final_model, t.final_locus);
            return d;
          }, py::arg("formula"), py::arg("at"), py::arg("nbhd") = "")
      .def("__eq__", [](const Model& a, const Model& b) { return a.m == b.m; });

  mod.def("reduce", &reduce_py, py::arg("formula"), py::arg("semantics"), py::arg("strategy") = "innermost");
  mod.def("axiom_count", [](const std::string& s) { return axiom_count(parse_semantics(s)); }, py::arg("semantics"));
  mod.def("check_axiom", &axiom_report, py::arg("semantics"), py::arg("index"), py::arg("samples"), py::arg("seed"));
  mod.def("muddy", &muddy_report, py::arg("n"), py::arg("muddy"));
  mod.def("backward_induction", &game_report, py::arg("game_json"));
  mod.def("interval_example", [](const std::vector<int>& ns) { return render(interval_example(ns)); },
          py::arg("truncations") = std::vector<int>{2, 10, 1000});
  mod.def("run", &run_cli, py::arg("args"));
}
