#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cubefree/additive.hpp"
#include "cubefree/commands.hpp"

namespace py = pybind11;
using namespace cubefree;

namespace {

Ambient make_ambient(const std::string& kind, std::int64_t n) {
  if (kind == "cyclic") return Ambient::cyclic(n);
  if (kind == "interval") return Ambient::interval(n);
  throw std::invalid_argument("unknown ambient: " + kind);
}

Problem make_problem(const std::string& ambient, std::int64_t n, const std::string& pattern, int d,
                     bool include_zero) {
  ProblemKind kind;
  if (pattern == "cube") {
    kind = ProblemKind::CubeFree;
  } else if (pattern == "diag") {
    kind = ProblemKind::DiagonalFree;
  } else if (pattern == "pair") {
    kind = ProblemKind::PairFree;
  } else {
    throw std::invalid_argument("unknown pattern: " + pattern);
  }
  Problem p{kind, d, make_ambient(ambient, n), include_zero};
  p.validate();
  return p;
}

MethodChoice make_method(const std::string& name) {
  if (name == "auto") return MethodChoice::Auto;
  if (name == "brute") return MethodChoice::BruteForce;
  if (name == "bnb") return MethodChoice::BranchAndBound;
  if (name == "dp") return MethodChoice::DP;
  throw std::invalid_argument("unknown method: " + name);
}

std::string check(const std::string& ambient, std::int64_t n, const std::string& pattern, int d,
                  const std::vector<Element>& elements, bool include_zero) {
  const auto problem = make_problem(ambient, n, pattern, d, include_zero);
  return run_check(problem, DenseSet::from_elements(problem.ambient, elements)).report.dump();
}

std::string max(const std::string& ambient, std::int64_t n, const std::string& pattern, int d, bool include_zero,
                const std::string& method, std::optional<std::int64_t> cap, bool force, int workers,
                std::optional<std::int64_t> time_limit_ms, bool cross_check) {
  MaxRequest req{make_problem(ambient, n, pattern, d, include_zero)};
  req.method = make_method(method);
  req.cap = cap;
  req.force = force;
  req.workers = workers;
  if (time_limit_ms) req.time_limit = std::chrono::milliseconds(*time_limit_ms);
  req.cross_check = cross_check;
  std::optional<SearchResult> result;
  {
    py::gil_scoped_release release;
    result = run_max(req);
  }
  return to_json(*result).dump();
}

std::string verify(const std::string& claim, const std::map<std::string, std::string>& ranges,
                   std::optional<std::string> tuples, int workers, std::int64_t brute_cap, std::int64_t cap) {
  VerifyRequest req;
  req.claim = claim;
  for (const auto& [k, v] : ranges) req.points.ranges.emplace_back(k, v);
  if (tuples) req.points.tuples = parse_tuples(*tuples);
  req.context.brute_force_cap = brute_cap;
  req.context.branch_and_bound_cap = cap;
  req.workers = workers;
  Json verdicts = Json::array();
  VerifySummary summary;
  {
    py::gil_scoped_release release;
    summary = run_verify(req, [&](const Verdict& v) { verdicts.push_back(to_json(v)); });
  }
  return Json{{"verdicts", verdicts},
              {"summary",
               {{"claim", summary.claim},
                {"total", summary.total},
                {"passed", summary.passed},
                {"failed", summary.failed},
                {"pass", summary.ok()}}}}
      .dump();
}

std::string construct(const std::string& name, std::optional<std::int64_t> n, std::optional<std::int64_t> d,
                      std::optional<std::int64_t> p, std::optional<std::int64_t> l, std::optional<std::int64_t> upto,
                      std::optional<std::string> ambient) {
  ConstructRequest req{name, n, d, p, l, upto};
  if (ambient) req.ambient = make_ambient(*ambient, 1).kind();
  return run_construct(req).dump();
}

std::string incidence(std::int64_t n, std::int64_t d, std::size_t multiplicity, std::size_t set_size) {
  return to_json(incidence_report(family_diagonal(n, d), multiplicity, set_size)).dump();
}

std::string incidence_prime_power(std::int64_t p, int l, int d, int a) {
  const auto mult = static_cast<std::size_t>((p - 1) * ipow(p, d - 1));
  const auto size = static_cast<std::size_t>(ipow(p, d) - 1);
  return to_json(incidence_report(family_prime_power(p, l, d, a), mult, size)).dump();
}

std::vector<std::string> claims() {
  std::vector<std::string> out;
  for (const auto& c : claim_catalogue()) out.emplace_back(c.id);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cube-free set search and claim verification";
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

  m.def("check", &check, py::arg("ambient"), py::arg("n"), py::arg("pattern"), py::arg("d"), py::arg("elements"),
        py::arg("include_zero") = false);
  m.def("max", &max, py::arg("ambient"), py::arg("n"), py::arg("pattern"), py::arg("d"),
        py::arg("include_zero") = false, py::arg("method") = "auto", py::arg("cap") = py::none(),
        py::arg("force") = false, py::arg("workers") = 1, py::arg("time_limit_ms") = py::none(),
        py::arg("cross_check") = false);
  m.def("verify", &verify, py::arg("claim"), py::arg("ranges") = std::map<std::string, std::string>{},
        py::arg("tuples") = py::none(), py::arg("workers") = 1, py::arg("brute_cap") = kDefaultBruteForceCap,
        py::arg("cap") = kDefaultBranchAndBoundCap);
  m.def("construct", &construct, py::arg("name"), py::arg("n") = py::none(), py::arg("d") = py::none(),
        py::arg("p") = py::none(), py::arg("l") = py::none(), py::arg("upto") = py::none(),
        py::arg("ambient") = py::none());
  m.def("incidence", &incidence, py::arg("n"), py::arg("d"), py::arg("multiplicity"), py::arg("set_size"));
  m.def("incidence_prime_power", &incidence_prime_power, py::arg("p"), py::arg("l"), py::arg("d"), py::arg("a"));
  m.def("claims", &claims);
}
