#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orbi/corpus.hpp"
#include "orbi/error.hpp"
#include "orbi/scenario.hpp"

namespace py = pybind11;
using orbi::json;

namespace {

// JSON crosses the boundary as text; the Python wrapper handles dicts.
py::tuple wrap(const orbi::Outcome& o) { return py::make_tuple(o.report.dump(), o.exit_code); }

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw py::value_error(std::string("invalid JSON: ") + e.what());
  }
}

template <orbi::Outcome (*Cmd)(const json&)>
py::tuple command(const std::string& text) {
  return wrap(Cmd(parse_text(text)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = orbi::kVersion;

  m.def("analyze", &command<orbi::cmd_analyze>, py::arg("scenario_json"));
  m.def("strata", &command<orbi::cmd_strata>, py::arg("scenario_json"));
  m.def("obstruct", &command<orbi::cmd_obstruct>, py::arg("scenario_json"));
  m.def("classify1", &command<orbi::cmd_classify1>, py::arg("scenario_json"));
  m.def("retraction", &command<orbi::cmd_retraction>, py::arg("scenario_json"));
  m.def(
      "sard",
      [](const std::string& text, std::optional<std::size_t> samples, std::optional<std::uint64_t> seed,
         std::optional<std::vector<std::pair<double, double>>> box) {
        orbi::SardFlags f{samples, seed, std::move(box)};
        return wrap(orbi::cmd_sard(parse_text(text), f));
      },
      py::arg("scenario_json"), py::arg("samples") = py::none(), py::arg("seed") = py::none(),
      py::arg("box") = py::none());

  m.def("corpus_names", [] {
    std::vector<std::string> names;
    for (const auto& e : orbi::builtin_corpus()) names.push_back(e.name);
    return names;
  });
  m.def("corpus_scenario", [](const std::string& name) {
    const auto* e = orbi::find_entry(name);
    if (!e) throw py::key_error(name);
    return py::make_tuple(e->command, e->scenario.dump());
  });
  m.def(
      "corpus_run",
      [](const std::string& anchor, bool corrupt) {
        auto run = orbi::run_corpus(anchor, corrupt);
        return py::make_tuple(run.to_json().dump(), run.all_pass());
      },
      py::arg("anchor") = "", py::arg("corrupt") = false);
}
