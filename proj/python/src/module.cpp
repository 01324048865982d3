#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "funcord/differential.hpp"
#include "funcord/error.hpp"
#include "funcord/io.hpp"
#include "funcord/lebesgue.hpp"
#include "funcord/order_intervals.hpp"
#include "funcord/parallel_sum.hpp"
#include "funcord/version.hpp"

namespace py = pybind11;
using namespace funcord;

namespace {

using Holder = std::shared_ptr<StarAlgebra>;

Holder hold(const AlgebraPtr& a) { return std::const_pointer_cast<StarAlgebra>(a); }

py::object to_python(const io::Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

AlgebraPtr as_algebra(const py::object& obj) {
  if (py::isinstance<py::str>(obj)) return algebra_from_label(obj.cast<std::string>());
  return obj.cast<Holder>();
}

InfimumBackend backend_from(const std::string& name) {
  if (name == "generic") return InfimumBackend::Generic;
  if (name == "matrix") return InfimumBackend::Matrix;
  if (name == "commutative") return InfimumBackend::Commutative;
  throw py::value_error("backend must be generic, matrix or commutative");
}

Suite suite_from(const std::string& name) {
  if (name == "commutative") return Suite::Commutative;
  if (name == "matrix") return Suite::Matrix;
  if (name == "trend") return Suite::Trend;
  throw py::value_error("suite must be commutative, matrix or trend");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Order calculus of representable functionals on finite-dimensional *-algebras";
  m.attr("__version__") = kVersion;

  static py::exception<Error> error(m, "FuncordError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error;
      PyErr_SetObject(exc.ptr(),
                      py::make_tuple(e.what(), std::string(to_string(e.kind()))).ptr());
    }
  });

  py::class_<StarAlgebra, Holder>(m, "StarAlgebra")
      .def_property_readonly("label", &StarAlgebra::label)
      .def_property_readonly("dim", &StarAlgebra::dim)
      .def_property_readonly("is_full_matrix_algebra", &StarAlgebra::is_full_matrix_algebra)
      .def_property_readonly("unit", &StarAlgebra::unit)
      .def_property_readonly("involution", &StarAlgebra::involution)
      .def("structure_constant", &StarAlgebra::c, py::arg("i"), py::arg("j"), py::arg("k"))
      .def("validate", [](const StarAlgebra& a) { return to_python(io::to_json(validate_structure(a))); })
      .def("to_json", [](const StarAlgebra& a) { return to_python(io::algebra_to_json(a)); })
      .def("__repr__", [](const StarAlgebra& a) { return "StarAlgebra('" + a.label() + "')"; });

  m.def("matrix_algebra", [](int n) { return hold(matrix_algebra(n)); }, py::arg("n"));
  m.def("function_algebra", [](int m) { return hold(function_algebra(m)); }, py::arg("m"));
  m.def("direct_sum", [](const Holder& a, const Holder& b) { return hold(direct_sum(a, b)); },
        py::arg("a"), py::arg("b"));
  m.def("zero_product_algebra", [](int n) { return hold(zero_product_algebra(n)); },
        py::arg("n"));
  m.def("algebra", [](const std::string& label) { return hold(algebra_from_label(label)); },
        py::arg("label"));

  m.def("multiply", [](const Holder& alg, const Vector& x, const Vector& y) {
    return multiply(AlgebraElement(alg, x), AlgebraElement(alg, y)).coeffs();
  }, py::arg("algebra"), py::arg("x"), py::arg("y"));
  m.def("involute", [](const Holder& alg, const Vector& x) {
    return involute(AlgebraElement(alg, x)).coeffs();
  }, py::arg("algebra"), py::arg("x"));

  py::class_<Functional>(m, "Functional")
      .def(py::init([](const py::object& alg, const Vector& values) {
             return Functional(as_algebra(alg), values);
           }),
           py::arg("algebra"), py::arg("values"))
      .def_property_readonly("algebra", [](const Functional& f) { return hold(f.algebra()); })
      .def_property_readonly("values", &Functional::values)
      .def_property_readonly("scale", &Functional::scale)
      .def("__call__", [](const Functional& f, const Vector& a) {
        return evaluate(f, AlgebraElement(f.algebra(), a));
      })
      .def("__add__", &Functional::operator+)
      .def("__sub__", &Functional::operator-)
      .def("__mul__", &Functional::operator*)
      .def("__rmul__", &Functional::operator*)
      .def("to_json", [](const Functional& f) { return to_python(io::functional_to_json(f)); })
      .def("__repr__", [](const Functional& f) {
        return "Functional('" + f.algebra()->label() + "', " +
               std::to_string(f.values().size()) + " values)";
      });

  m.def("gram_matrix", [](const Functional& f) { return gram_matrix(f).entries; });
  m.def("is_positive", &is_positive);
  m.def("leq", &leq);
  m.def("approx_equal", &approx_equal, py::arg("f"), py::arg("g"), py::arg("rel_tol") = 1e-8);
  m.def("hilbert_bound", &hilbert_bound);
  m.def("check_representable",
        [](const Functional& f) { return to_python(io::to_json(check_representable(f))); });
  m.def("is_representable", &is_representable);
  m.def("gns_triple", [](const Functional& f) { return to_python(io::to_json(gns_triple(f))); });

  m.def("parallel_sum", [](const Functional& f, const Functional& g) {
    return parallel_sum(f, g).value;
  });
  m.def("variational_value", [](const Functional& f, const Functional& g, const Vector& a) {
    return variational_value(f, g, AlgebraElement(f.algebra(), a));
  });
  m.def("is_singular", &is_singular);

  m.def("regular_part", &regular_part, py::arg("f"), py::arg("g"), py::arg("tol") = 1e-7);
  m.def("regular_part_commutant", &regular_part_commutant);
  m.def("lebesgue_decompose",
        [](const Functional& f, const Functional& g, double tol, const std::string& route) {
          RegularPartOptions options;
          options.tol = tol;
          options.route = route == "commutant" ? RegularPartRoute::Commutant
                                               : RegularPartRoute::Limit;
          return to_python(io::to_json(lebesgue_decompose(f, g, options)));
        },
        py::arg("f"), py::arg("g"), py::arg("tol") = 1e-7, py::arg("route") = "limit");
  m.def("domination_constant", &domination_constant);
  m.def("is_absolutely_continuous", &is_absolutely_continuous);

  m.def("is_extreme_in_interval", &is_extreme_in_interval, py::arg("h"), py::arg("lo"),
        py::arg("hi"));
  m.def("extreme_equivalences",
        [](const Functional& g, const Functional& f, double tol) {
          return to_python(io::to_json(extreme_equivalences(g, f, tol)));
        },
        py::arg("g"), py::arg("f"), py::arg("tol") = 1e-7);
  m.def("infimum",
        [](const Functional& f, const Functional& g, const std::string& backend, double tol) {
          return to_python(io::to_json(infimum_with_backend(f, g, backend_from(backend), tol)));
        },
        py::arg("f"), py::arg("g"), py::arg("backend") = "generic", py::arg("tol") = 1e-7);
  m.def("extreme_meet", &extreme_meet, py::arg("u"), py::arg("h"), py::arg("f"),
        py::arg("tol") = 1e-6);

  m.def("oracle_check",
        [](const std::string& suite, int cases, std::uint64_t seed) {
          SuiteReport r;
          {
            py::gil_scoped_release release;
            r = run_suite(suite_from(suite), cases, seed);
          }
          return to_python(io::to_json(r));
        },
        py::arg("suite"), py::arg("cases") = 100, py::arg("seed") = 1);
}
