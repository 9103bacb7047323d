#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ncgame/cli.hpp"
#include "ncgame/decide.hpp"
#include "ncgame/errors.hpp"
#include "ncgame/gamefile.hpp"

namespace py = pybind11;

namespace {

py::tuple run(const std::vector<std::string>& args) {
  std::vector<std::string> full{"ncgame"};
  full.insert(full.end(), args.begin(), args.end());
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = ncgame::cli::run(full, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

py::dict decide_text(const std::string& text, std::optional<std::string> dialect, std::size_t cap) {
  ncgame::GameFile g = ncgame::parse_game(text);
  std::optional<ncgame::Dialect> d;
  if (dialect) d = ncgame::parse_dialect(*dialect);
  ncgame::DecideOptions opts;
  opts.cap = cap;
  ncgame::Verdict v;
  {
    py::gil_scoped_release release;
    v = ncgame::decide(ncgame::determining_set(g, d), opts);
  }
  py::dict r;
  r["outcome"] = ncgame::to_string(v.outcome);
  r["exit_code"] = ncgame::exit_code(v.outcome);
  r["reason"] = v.reason;
  r["cap"] = v.cap;
  r["notes"] = v.notes;
  r["rules"] = v.system ? py::cast(v.system->rules().size()) : py::none();
  r["dimension"] = v.witness ? py::cast(v.witness->dimension()) : py::none();
  return r;
}

}  // namespace

PYBIND11_MODULE(_ncgame, m) {
  m.doc() = "Perfect commuting-operator strategies for nonlocal games";
  py::register_exception<ncgame::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ncgame::UsageError>(m, "UsageError", PyExc_ValueError);
  m.def("run", &run, py::arg("args"), "Run the command-line tool; returns (exit code, stdout, stderr).");
  m.def("decide_text", &decide_text, py::arg("text"), py::arg("dialect") = py::none(), py::arg("cap") = 6,
        "Decide a game given as game-file text.");
}
