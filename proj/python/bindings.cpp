#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "geoprog/ap_engine.hpp"
#include "geoprog/errors.hpp"
#include "geoprog/geodesics.hpp"
#include "geoprog/orders.hpp"
#include "geoprog/progressions.hpp"
#include "geoprog/quadratic.hpp"
#include "geoprog/ramsey.hpp"

namespace py = pybind11;
using namespace geoprog;

// Python int <-> BigInt through decimal strings.
namespace pybind11::detail {
template <>
struct type_caster<BigInt> {
  PYBIND11_TYPE_CASTER(BigInt, const_name("int"));

  bool load(handle src, bool) {
    if (!src || !PyLong_Check(src.ptr())) return false;
    value = BigInt(py::str(src).cast<std::string>());
    return true;
  }
  static handle cast(const BigInt& v, return_value_policy, handle) {
    return PyLong_FromString(v.get_str().c_str(), nullptr, 10);
  }
};
}  // namespace pybind11::detail

namespace {

Mat to_mat(const std::vector<BigInt>& entries) {
  if (entries.size() == 4) return Mat(2, entries);
  if (entries.size() == 9) return Mat(3, entries);
  throw DomainError("a matrix needs 4 or 9 row-major entries");
}

std::vector<BigInt> from_mat(const Mat& m) { return {m.entries().begin(), m.entries().end()}; }

RealMultiset integer_set(const std::vector<BigInt>& xs) { return RealMultiset::integers(xs); }

py::object progression(const std::optional<Progression>& p) {
  if (!p) return py::none();
  std::vector<double> values;
  for (const auto& v : p->values) values.push_back(static_cast<double>(v));
  return py::make_tuple(p->indices, values);
}

}  // namespace

PYBIND11_MODULE(_geoprog, m) {
  m.doc() = "Exact arithmetic progressions in geodesic length spectra";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<SearchExhausted>(m, "SearchExhausted", PyExc_RuntimeError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

  // Geodesics and fields.
  m.def("trace_to_length", [](const BigInt& t, int digits) { return format_real(trace_to_length(t), digits); },
        py::arg("trace"), py::arg("digits") = kLengthDigits, "2 arccosh(trace / 2) as a decimal string");
  m.def("is_absolutely_primitive", [](const std::vector<BigInt>& g) { return is_absolutely_primitive(to_mat(g)); });
  m.def("embed_unit_as_matrix", [](const BigInt& d) { return from_mat(embed_unit_as_matrix(d)); },
        "Integral matrix whose eigenvalue is the norm-one fundamental unit of Q(sqrt d)");
  m.def("fundamental_unit", [](const BigInt& d) {
    const QuadInt u = fundamental_unit(d).value();
    const auto [x, y] = u.basis_coords();
    return py::make_tuple(x, y);
  }, "Coordinates (u, v) of the fundamental unit u + v omega");

  // Orders.
  m.def("order_P", [](const std::vector<BigInt>& g, const BigInt& mod) { return order_P(to_mat(g), mod); },
        py::arg("gamma"), py::arg("m"));
  m.def("prime_tower", [](const std::vector<BigInt>& g, const BigInt& p, unsigned depth) {
    return prime_tower(to_mat(g), p, depth).values;
  }, py::arg("gamma"), py::arg("p"), py::arg("depth"));
  m.def("crt_check", [](const std::vector<BigInt>& g, const BigInt& a, const BigInt& b) {
    const CrtCheck c = crt_check(to_mat(g), a, b);
    return py::make_tuple(c.lhs, c.rhs, c.equal);
  });
  m.def("find_modulus_with_P", [](const std::vector<BigInt>& g, const BigInt& target, unsigned budget) -> py::object {
    const ModulusSearch s = find_modulus_with_P(to_mat(g), target, budget);
    if (!s.modulus) return py::none();
    return py::cast(*s.modulus);
  }, py::arg("gamma"), py::arg("target"), py::arg("budget") = kDefaultTowerBudget);
  m.def("order_P_parabolic", [](const std::vector<BigInt>& g, int index, bool primed, const BigInt& q) {
    return order_P_parabolic(to_mat(g), make_parabolic(index, primed ? ParabolicSide::primed : ParabolicSide::standard), q);
  }, py::arg("gamma"), py::arg("index"), py::arg("primed"), py::arg("q"));
  m.def("order_P_bianchi", [](long d, const std::string& entries, const BigInt& alpha) {
    return order_P_bianchi(parse_bianchi(BigInt(d), entries), alpha);
  }, py::arg("d"), py::arg("gamma"), py::arg("alpha"), "gamma as 'u:v,...' with u + v omega entries");

  // Progression witnesses, exchanged as JSON text.
  m.def("constant_C", [](const std::vector<BigInt>& g, unsigned k) { return constant_C(to_mat(g), k); });
  m.def("build_ap_witness", [](const std::vector<BigInt>& g, unsigned k, unsigned budget) {
    return witness_to_json(build_ap_witness(to_mat(g), k, budget));
  }, py::arg("gamma"), py::arg("k"), py::arg("budget") = kDefaultTowerBudget);
  m.def("occurs_in_ap", [](const BigInt& trace, unsigned k, unsigned budget) {
    return witness_to_json(occurs_in_ap(trace, k, budget));
  }, py::arg("trace"), py::arg("k"), py::arg("budget") = kDefaultTowerBudget);
  m.def("verify_witness", [](const std::string& json) {
    const Verification v = verify_witness(witness_from_json(json));
    return py::make_tuple(v.ok, v.reasons);
  });

  // Progressions in multisets.
  m.def("find_k_ap", [](const std::vector<BigInt>& xs, unsigned k) { return progression(find_k_ap(integer_set(xs), k, 0)); },
        py::arg("values"), py::arg("k"), "Exact search over integers; returns (indices, values) or None");
  m.def("has_3term_ap", [](const std::vector<BigInt>& xs) { return has_3term_ap(integer_set(xs), 0).has_value(); });
  m.def("is_eps_almost_ap", [](const std::vector<double>& seq, double eps) {
    std::vector<Real> v(seq.begin(), seq.end());
    const AlmostAPCheck c = is_eps_almost_ap(v, eps);
    return py::make_tuple(c.ok, static_cast<double>(c.deviation));
  });
  m.def("almost_ap_in_spectrum", [](const BigInt& max_trace, double eps, unsigned k) {
    return almost_ap_to_json(find_almost_ap_scan(RealMultiset::lengths(enumerate_length_set(max_trace)), eps, k));
  }, py::arg("max_trace"), py::arg("eps"), py::arg("k"));

  // Van der Waerden.
  m.def("mono_ap", [](const std::vector<unsigned>& colors, unsigned d, unsigned k) -> py::object {
    const auto ap = mono_ap(Coloring{d, colors}, k);
    if (!ap) return py::none();
    return py::make_tuple(ap->start, ap->difference, ap->color);
  }, py::arg("colors"), py::arg("d"), py::arg("k"));
  m.def("vdw_number", [](unsigned d, unsigned k, unsigned n_max, double seconds) {
    const auto budget = std::chrono::milliseconds(static_cast<long>(seconds * 1000));
    VdwResult r;
    {
      py::gil_scoped_release release;
      r = vdw_number(d, k, n_max, budget);
    }
    return py::make_tuple(r.number ? py::cast(*r.number) : py::none(), r.witness.colors);
  }, py::arg("d"), py::arg("k"), py::arg("n_max") = 64, py::arg("seconds") = 60.0);
}
