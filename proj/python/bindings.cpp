// Python bindings for the core operations: root-system data, alcove
// reductions, KL polynomials, generic dimensions, and support descriptors.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsv/cli.hpp"
#include "qsv/gendim.hpp"
#include "qsv/support.hpp"

namespace py = pybind11;
using namespace qsv;

namespace {

py::int_ to_pyint(const Int& v) {
  return py::reinterpret_steal<py::int_>(
      PyLong_FromString(v.str().c_str(), nullptr, 10));
}

py::dict poly_dict(const LaurentPoly& f) {
  py::dict d;
  for (const auto& [e, c] : f.terms()) d[py::int_(e)] = to_pyint(c);
  return d;
}

ParamMode parse_mode(const std::string& mode) {
  if (mode == "quantum") return ParamMode::Quantum;
  if (mode == "modular") return ParamMode::Modular;
  throw InvalidInputError("mode must be 'quantum' or 'modular'");
}

std::vector<int> one_based(const std::vector<int>& v) {
  std::vector<int> out;
  out.reserve(v.size());
  for (int i : v) out.push_back(i + 1);
  return out;
}

py::dict descriptor_dict(const SupportVarietyDescriptor& d) {
  py::dict out;
  out["J"] = one_based(d.J);
  out["conjugator_word"] = one_based(d.conjugator_word);
  out["dimension"] = d.dimension;
  out["mode"] = std::string(to_string(d.mode));
  out["kind"] = d.kind == ModuleKind::Irreducible ? "irreducible" : "weyl";
  out["conditional_on_LCF"] = d.conditional_on_LCF;
  return out;
}

// One root datum + affine group + KL table, the working state for a fixed
// (type, rank, ell).
class Context {
 public:
  Context(const std::string& type, int rank, long long ell,
          long long max_kl_length)
      : rs_(RootSystem::build(type.empty() ? '?' : type[0], rank)),
        group_(std::make_shared<AffineGroup>(rs_, ell)),
        table_(group_, max_kl_length) {}

  const RootSystem& roots() const { return *rs_; }
  long long ell() const { return group_->level(); }

  py::dict reduce(const CoordVec& la) const {
    AlcoveReduction red = group_->reduce_to_fundamental(Weight{la});
    py::dict out;
    out["lambda_minus"] = red.lambda_minus.fw;
    out["theta"] = red.w.theta;
    out["finite_word"] = one_based(rs_->word(red.w.x));
    out["word"] = group_->reduced_word(red.w);
    out["length"] = group_->length(red.w);
    out["stabilizer"] = red.stabilizer;
    out["a_count"] = red.a_count;
    return out;
  }

  std::vector<long long> kl(const std::vector<int>& y_word,
                            const std::vector<int>& w_word) {
    return table_.kl(group_->from_word(y_word), group_->from_word(w_word))
        .coeffs;
  }

  std::vector<long long> parabolic_kl(const std::vector<int>& I,
                                      const std::vector<int>& y_word,
                                      const std::vector<int>& w_word) {
    return table_
        .parabolic(I, group_->from_word(y_word), group_->from_word(w_word))
        .coeffs;
  }

  py::dict d_poly_of(const CoordVec& la) const {
    return poly_dict(d_poly(*rs_, Weight{la}));
  }

  py::dict weyl_generic_dim_of(const CoordVec& la) const {
    return poly_dict(weyl_generic_dim(*rs_, Weight{la}));
  }

  py::int_ weyl_dim(const CoordVec& la) const {
    return to_pyint(weyl_generic_dim(*rs_, Weight{la}).eval_one());
  }

  py::list character(const CoordVec& la) {
    CharacterCombination comb = irreducible_character(table_, Weight{la});
    py::list out;
    for (const CharacterTerm& t : comb.terms)
      out.append(py::make_tuple(t.sign, t.multiplicity, t.weight.fw));
    return out;
  }

  py::dict irreducible_generic_dim_of(const CoordVec& la) {
    return poly_dict(irreducible_generic_dim(table_, Weight{la}));
  }

  py::int_ irreducible_dim(const CoordVec& la) {
    return to_pyint(irreducible_generic_dim(table_, Weight{la}).eval_one());
  }

  py::dict verify_derivative(const CoordVec& la) const {
    DerivativeCertificate cert =
        verify_derivative_formula(*group_, Weight{la});
    py::dict out;
    out["s"] = cert.s;
    out["lhs"] = cert.lhs.to_string();
    out["rhs"] = cert.rhs.to_string();
    out["equal"] = cert.equal;
    out["nonzero"] = cert.nonzero;
    out["pass"] = cert.pass();
    return out;
  }

  py::dict multiplicity(const CoordVec& la) {
    MultiplicityReport rep = multiplicity_and_complexity(table_, Weight{la});
    py::dict out;
    out["n"] = rep.n;
    out["s"] = rep.s;
    out["derivative_nonzero"] = rep.derivative_nonzero;
    out["borel_bound"] = rep.borel_bound;
    out["support_dimension"] = rep.support_dimension;
    out["ok"] = rep.ok();
    return out;
  }

  py::dict support(const CoordVec& la, const std::string& mode) const {
    return descriptor_dict(
        irreducible_support(*rs_, Weight{la}, ell(), parse_mode(mode)));
  }

  py::dict weyl_support(const CoordVec& la) const {
    return descriptor_dict(weyl_module_support(*rs_, Weight{la}, ell()));
  }

 private:
  std::shared_ptr<const RootSystem> rs_;
  std::shared_ptr<AffineGroup> group_;
  KLTable table_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "exact support-variety and generic-dimension computations for small "
      "quantum group modules";

  py::register_exception<InvalidInputError>(m, "InvalidInput",
                                            PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityLimit",
                                        PyExc_RuntimeError);
  py::register_exception<InvariantViolationError>(m, "InvariantViolation",
                                                  PyExc_RuntimeError);

  py::class_<RootSystem, std::shared_ptr<RootSystem>>(m, "RootSystem")
      .def_property_readonly("rank", &RootSystem::rank)
      .def_property_readonly("name", &RootSystem::name)
      .def_property_readonly("coxeter_number", &RootSystem::coxeter_number)
      .def_property_readonly("num_positive_roots", &RootSystem::num_positive)
      .def_property_readonly("weyl_order", &RootSystem::weyl_order)
      .def_property_readonly("bad_primes",
                             [](const RootSystem& rs) {
                               return std::vector<long long>(
                                   rs.bad_primes().begin(),
                                   rs.bad_primes().end());
                             })
      .def_property_readonly("rho",
                             [](const RootSystem& rs) { return rs.rho().fw; })
      .def("positive_roots",
           [](const RootSystem& rs) {
             std::vector<CoordVec> out;
             for (const Root& r : rs.positive_roots()) out.push_back(r.sr);
             return out;
           })
      .def("pairing",
           [](const RootSystem& rs, const CoordVec& la, const CoordVec& al) {
             return rs.pairing(Weight{la}, Root{al});
           },
           py::arg("weight"), py::arg("root"))
      .def("height",
           [](const RootSystem& rs, const CoordVec& root) {
             return rs.height(Root{root});
           })
      .def("twice_weighted_height",
           [](const RootSystem& rs, const CoordVec& la) {
             return rs.twice_weighted_height(Weight{la});
           })
      .def("phi_lambda",
           [](const RootSystem& rs, const CoordVec& la, long long ell) {
             std::vector<CoordVec> out;
             for (const Root& r : rs.phi_lambda(Weight{la}, ell).positive)
               out.push_back(r.sr);
             return out;
           },
           py::arg("weight"), py::arg("ell"),
           "positive part of the wall system Phi_lambda")
      .def("validate_ell",
           [](const RootSystem& rs, long long ell, const std::string& mode) {
             rs.validate_ell(ell, parse_mode(mode));
           },
           py::arg("ell"), py::arg("mode") = "quantum")
      .def("conjugate_subsets",
           [](const RootSystem& rs, const std::vector<int>& J,
              const std::vector<int>& K) {
             auto shift = [](const std::vector<int>& v) {
               std::vector<int> out;
               for (int i : v) out.push_back(i - 1);
               return out;
             };
             return conjugacy_invariance_check(rs, shift(J), shift(K));
           },
           py::arg("J"), py::arg("K"),
           "whether Phi_J and Phi_K are Weyl-conjugate (1-based indices)");

  m.def("build", &RootSystem::build, py::arg("type"), py::arg("rank"),
        "construct the root system of a simple type, rank <= 8");

  py::class_<Context>(m, "Context")
      .def(py::init<const std::string&, int, long long, long long>(),
           py::arg("type"), py::arg("rank"), py::arg("ell"),
           py::arg("max_kl_length") = 14)
      .def_property_readonly("ell", &Context::ell)
      .def_property_readonly(
          "roots", [](const Context& c) { return c.roots().name(); })
      .def("reduce", &Context::reduce, py::arg("weight"),
           "alcove reduction: lambda^-, minimal dominant element, stabilizer")
      .def("kl", &Context::kl, py::arg("y_word"), py::arg("w_word"),
           "Kazhdan-Lusztig coefficients; words use 0 for the affine letter")
      .def("parabolic_kl", &Context::parabolic_kl, py::arg("I"),
           py::arg("y_word"), py::arg("w_word"))
      .def("d_poly", &Context::d_poly_of, py::arg("weight"))
      .def("weyl_generic_dim", &Context::weyl_generic_dim_of,
           py::arg("weight"))
      .def("weyl_dim", &Context::weyl_dim, py::arg("weight"))
      .def("irreducible_character", &Context::character, py::arg("weight"),
           "signed multiplicities of standard characters: (sign, mult, weight)")
      .def("irreducible_generic_dim", &Context::irreducible_generic_dim_of,
           py::arg("weight"))
      .def("irreducible_dim", &Context::irreducible_dim, py::arg("weight"))
      .def("verify_derivative_formula", &Context::verify_derivative,
           py::arg("weight"))
      .def("multiplicity_and_complexity", &Context::multiplicity,
           py::arg("weight"))
      .def("support", &Context::support, py::arg("weight"),
           py::arg("mode") = "quantum")
      .def("weyl_support", &Context::weyl_support, py::arg("weight"));

  m.attr("__version__") = "0.1.0";
}
