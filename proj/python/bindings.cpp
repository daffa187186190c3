#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "skewrank/atlas.hpp"
#include "skewrank/io.hpp"

namespace py = pybind11;
using namespace skewrank;

namespace {

py::list vec_strings(const Vec& v) {
  py::list out;
  for (const auto& x : v) out.append(x.str());
  return out;
}

py::dict decomposition_dict(const Decomposition& d) {
  py::dict out;
  out["available"] = d.available;
  out["numeric"] = d.numeric;
  out["field_D"] = d.field_D.get_str();
  out["diagnostic"] = d.diagnostic;
  py::list terms;
  if (d.numeric) {
    for (const auto& t : d.numeric_terms) terms.append(py::dict(py::arg("vectors") = t.vectors));
  } else {
    for (const auto& t : d.terms) {
      py::list vs;
      for (const auto& v : t.vectors) vs.append(vec_strings(v));
      terms.append(py::dict(py::arg("coeff") = t.coeff.str(), py::arg("vectors") = vs));
    }
  }
  out["terms"] = terms;
  return out;
}

py::dict classification_dict(const Classification& c) {
  py::dict out;
  py::list labels;
  for (auto l : c.labels) labels.append(to_string(l));
  out["labels"] = labels;
  out["rank"] = c.rank ? py::cast(*c.rank) : py::none();
  out["n_essential"] = c.n_essential;
  out["note"] = c.note;
  out["decomposition"] = c.decomposition ? py::object(decomposition_dict(*c.decomposition)) : py::none();
  return out;
}

}  // namespace

PYBIND11_MODULE(_skewrank, m) {
  m.doc() = "Exact exterior algebra, apolarity and trivector classification";

  py::class_<Multivector>(m, "Tensor")
      .def(py::init<int, int, bool>(), py::arg("dim"), py::arg("degree"), py::arg("dual") = false)
      .def_static("basis", [](int dim, const std::vector<int>& idx, bool dual, const std::string& c) {
            return Multivector::basis(dim, idx, dual, Scalar::parse(c));
          }, py::arg("dim"), py::arg("indices"), py::arg("dual") = false, py::arg("coeff") = "1")
      .def_static("from_json", &parse_tensor)
      .def("to_json", &serialize_tensor)
      .def_property_readonly("dim", &Multivector::dim)
      .def_property_readonly("degree", &Multivector::degree)
      .def_property_readonly("dual", &Multivector::dual)
      .def("is_zero", &Multivector::is_zero)
      .def("coeff", [](const Multivector& t, const std::vector<int>& idx) {
        int sign = 1;
        Mask mk = mask_of(idx, t.dim(), &sign);
        return (Scalar(sign) * t.coeff(mk)).str();
      })
      .def("__add__", [](const Multivector& a, const Multivector& b) { return a + b; })
      .def("__sub__", [](const Multivector& a, const Multivector& b) { return a - b; })
      .def("__neg__", [](const Multivector& a) { return -a; })
      .def("__eq__", [](const Multivector& a, const Multivector& b) { return a == b; })
      .def("__xor__", [](const Multivector& a, const Multivector& b) { return wedge(a, b); })
      .def("__str__", &Multivector::str)
      .def("__repr__", [](const Multivector& t) { return "Tensor(" + t.str() + ")"; });

  m.def("wedge", [](const Multivector& a, const Multivector& b) { return wedge(a, b); });
  m.def("contract", [](const Multivector& h, const Multivector& t) { return contract(h, t); });
  m.def("annihilator_dims", [](const Multivector& t) {
    std::vector<size_t> dims;
    for (const auto& p : annihilator(t).pieces) dims.push_back(p.dim());
    return dims;
  });
  m.def("essential_dim", [](const Multivector& t) { return essential_space(t).dim(); });
  m.def("is_decomposable", [](const Multivector& t) { return is_decomposable(t).has_value(); });
  m.def("point_ideal_degrees", [](const std::vector<Multivector>& pts) { return point_ideal(pts).generator_degrees(); });

  m.def("labels", [] {
    std::vector<std::string> out;
    for (auto l : all_labels()) out.push_back(to_string(l));
    return out;
  });
  m.def("table_rank", [](const std::string& label) { return info(parse_label(label)).rank; });
  m.def("normal_form", [](const std::string& label) { return normal_form(parse_label(label)); });
  m.def("orbit_sample", [](const std::string& label, uint64_t seed, int ambient) {
    return orbit_sample(parse_label(label), seed, ambient);
  }, py::arg("label"), py::arg("seed") = 0, py::arg("ambient") = 0);
  m.def("detB_is_zero", [](const Multivector& t) { return detB(t).is_zero(); });
  m.def("signature", [](const Multivector& t) { return signature(t).str(); });

  m.def("classify", [](const Multivector& t, uint64_t seed, bool decompose) {
    Classification c;
    {
      py::gil_scoped_release release;
      c = classify(t, ClassifyOptions{seed, 1e-9, decompose});
    }
    return classification_dict(c);
  }, py::arg("tensor"), py::arg("seed") = 0, py::arg("decompose") = true);

  m.def("standard_decomposition", [](const std::string& label, uint64_t seed) {
    return decomposition_dict(standard_decomposition(parse_label(label), seed));
  }, py::arg("label"), py::arg("seed") = 0);

  m.def("verify_standard", [](const Multivector& t, const std::string& label, uint64_t seed) {
    auto rep = verify_decomposition(t, standard_decomposition(parse_label(label), seed));
    return py::dict(py::arg("ok") = rep.ok, py::arg("exact") = rep.exact, py::arg("terms") = rep.terms,
                    py::arg("residual") = rep.residual);
  }, py::arg("tensor"), py::arg("label"), py::arg("seed") = 0);

  py::register_exception<UnsupportedDimension>(m, "UnsupportedDimension", PyExc_ValueError);
  py::register_exception<WrongClassifier>(m, "WrongClassifier", PyExc_ValueError);
}
