#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pellclass/charsums.hpp"
#include "pellclass/constants.hpp"
#include "pellclass/errors.hpp"
#include "pellclass/forms.hpp"
#include "pellclass/lseries.hpp"
#include "pellclass/moments.hpp"
#include "pellclass/pell.hpp"
#include "pellclass/report.hpp"
#include "pellclass/tail.hpp"

namespace py = pybind11;
using namespace pellclass;

namespace {

py::dict record_dict(const DiscriminantRecord& r) {
  py::dict d;
  d["d"] = r.d;
  d["t"] = r.t;
  d["u"] = r.u;
  d["log_eps"] = r.log_eps;
  d["h"] = r.h ? py::object(py::int_(*r.h)) : py::object(py::none());
  return d;
}

HybridOptions hybrid(const std::string& mode, u64 d_exact_max, double y, unsigned threads) {
  HybridOptions o;
  if (mode == "exact") {
    o.mode = HybridMode::exact;
  } else if (mode == "formula") {
    o.mode = HybridMode::formula;
  } else if (mode == "auto") {
    o.mode = HybridMode::automatic;
  } else {
    throw DomainError("mode must be exact, formula or auto");
  }
  o.d_exact_max = d_exact_max;
  o.y = y;
  o.threads = threads;
  return o;
}

}  // namespace

PYBIND11_MODULE(_pellclass, m) {
  m.doc() = "Class numbers of indefinite binary quadratic forms ordered by fundamental unit";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<GuardError>(m, "GuardError", PyExc_MemoryError);
  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<IntegrityError>(m, "IntegrityError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

  m.def("kronecker", &kronecker, py::arg("d"), py::arg("n"));

  py::class_<EnumerationRun>(m, "EnumerationRun")
      .def_readonly("x", &EnumerationRun::x)
      .def_readonly("pair_count", &EnumerationRun::pair_count)
      .def("__len__", [](const EnumerationRun& r) { return r.records.size(); })
      .def("records", [](const EnumerationRun& r) {
        py::list out;
        for (const auto& rec : r.records) out.append(record_dict(rec));
        return out;
      })
      .def("discriminants", [](const EnumerationRun& r) {
        std::vector<u64> out;
        out.reserve(r.records.size());
        for (const auto& rec : r.records) out.push_back(rec.d);
        return out;
      })
      .def("density", &density_report)
      .def("assign_class_numbers",
           [](EnumerationRun& r, const std::string& mode, u64 d_exact_max, double y, unsigned threads) {
             const HybridStats s = assign_class_numbers(r, hybrid(mode, d_exact_max, y, threads));
             py::dict d;
             d["exact"] = s.exact;
             d["formula"] = s.formula;
             d["unreliable"] = s.unreliable;
             return d;
           },
           py::arg("mode") = "auto", py::arg("d_exact_max") = 1'000'000, py::arg("y") = 1e4, py::arg("threads") = 1)
      .def("to_cache", &cache_serialize);

  m.def("enumerate",
        [](u64 x, unsigned threads) {
          EnumerateOptions o;
          o.threads = threads;
          return enumerate(x, o);
        },
        py::arg("x"), py::arg("threads") = 1);
  m.def("from_cache", [](const std::string& text) { return cache_parse(text); });

  m.def("reduced_forms", [](u64 d) {
    std::vector<std::tuple<i64, i64, i64>> out;
    for (const auto& f : reduced_forms(d)) out.emplace_back(f.a, f.b, f.c);
    return out;
  });
  m.def("class_number", [](u64 d) { return class_number_cycles(d); }, py::arg("d"));
  m.def("l_smoothed", [](u64 d, double k, double y) { return l_smoothed(d, k, y).value; }, py::arg("d"),
        py::arg("k") = 1.0, py::arg("y") = 1e4);

  m.def("charsum", [](u64 mod, u64 a, u64 u) {
    const CharSumCase c = make_case(mod, a, u);
    const Rational r = charsum_closed(c);
    return py::make_tuple(charsum_bruteforce(c), r.num(), r.den());
  });
  m.def("charsum_verify", [](u64 m_max, u64 u_max, unsigned threads) {
    return charsum_verify(m_max, u_max, threads).mismatches;
  }, py::arg("m_max"), py::arg("u_max"), py::arg("threads") = 1);

  m.def("gk", py::overload_cast<u64, double>(&gk), py::arg("m"), py::arg("k"));
  m.def("C", [](double k, u64 P) { return C_of_k(k, P).value; }, py::arg("k"), py::arg("P") = 1'000'000);
  m.def("H", [](double k) { return H_of_k(k).value; }, py::arg("k"));
  m.def("log_H", [](double k) { return H_of_k(k).log_value; }, py::arg("k"));
  m.def("log_H_asymptotic", &logH_asymp, py::arg("k"));
  m.def("local_H", &local_H, py::arg("p"), py::arg("k"));
  m.def("A0", [] { return A0_value().value; });

  m.def("li", &li, py::arg("y"));
  m.def("main_term", [](double x, double k) { return main_term_integral(x, k); }, py::arg("x"), py::arg("k"));
  m.def("moment", &empirical_moment, py::arg("run"), py::arg("k"), py::arg("threads") = 1);
  m.def("twisted_sum", &twisted_empirical, py::arg("run"), py::arg("k"), py::arg("m"), py::arg("threads") = 1);
  m.def("twisted_predicted", &twisted_predicted, py::arg("x"), py::arg("k"), py::arg("m"));

  m.def("predicted_tail", &predicted_tail, py::arg("tau"));
  m.def("tail", [](const EnumerationRun& run, double tau) {
    const TailReport r = empirical_tail(run, tau);
    return py::make_tuple(r.empirical_proportion, r.predicted, r.threshold);
  });
  m.def("extremes", [](const EnumerationRun& run, std::size_t top_n) {
    return to_csv(extremes_table(extreme_scan(run, top_n)));
  }, py::arg("run"), py::arg("top_n") = 20);
}
