// Python module _core.  Structured documents cross the boundary as JSON
// text in the eqsk/1 schema; the eqsk package turns them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eqsk/burnside.hpp"
#include "eqsk/error.hpp"
#include "eqsk/euler.hpp"
#include "eqsk/io.hpp"
#include "eqsk/mackey.hpp"
#include "eqsk/sk_dim0.hpp"
#include "eqsk/smith.hpp"
#include "eqsk/squares.hpp"

namespace py = pybind11;
using namespace eqsk;
using json = nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw StructuralError(e.what());
  }
}

std::string dump(const json& doc) { return io::tagged(doc).dump(-1, ' ', true); }

GroupPtr group_of(const std::string& ref) {
  const json doc = parse(ref);
  return io::read_group(doc.is_object() && doc.contains("group") ? doc.at("group") : doc);
}

std::vector<std::vector<std::int64_t>> rows(const IntMatrix& m) { return m.to_rows(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Burnside rings and Mackey functors of finite groups, plus categories with squares";

  auto error = py::register_exception<Error>(m, "EqskError", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", error.ptr());
  py::register_exception<StructuralError>(m, "StructuralError", error.ptr());
  py::register_exception<SizeCapError>(m, "SizeCapError", error.ptr());
  py::register_exception<OverflowError>(m, "OverflowError", error.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<TruncationError>(m, "TruncationError", error.ptr());
  py::register_exception<StabilizationError>(m, "StabilizationError", error.ptr());
  py::register_exception<IncompletenessError>(m, "IncompletenessError", error.ptr());

  m.def("group", [](const std::string& ref) { return dump(io::write_group(*group_of(ref))); });
  m.def("subgroups", [](const std::string& ref) {
    SubgroupLattice lat(group_of(ref));
    json out = json::array();
    for (std::size_t s = 0; s < lat.subgroups().size(); ++s)
      out.push_back({{"elements", lat.subgroups()[s].elements}, {"class", lat.class_of(static_cast<int>(s))}});
    return dump(json{{"subgroups", out}, {"class_count", lat.class_count()}});
  });
  m.def("table_of_marks", [](const std::string& ref) { return BurnsideRing(group_of(ref)).table_of_marks(); });
  m.def("burnside_mul", [](const std::string& ref, std::vector<std::int64_t> a, std::vector<std::int64_t> b) {
    BurnsideRing ring(group_of(ref));
    return ring.mul(BurnsideElement{std::move(a)}, BurnsideElement{std::move(b)}).coefficients;
  });
  m.def(
      "associativity_test",
      [](const std::string& ref, int trials, int max_apex, std::uint64_t seed) {
        const AssociativityResult r = associativity_test(group_of(ref), trials, max_apex, seed);
        return dump(json{{"trials", r.trials}, {"failures", r.failures}});
      },
      py::arg("group"), py::arg("trials") = 500, py::arg("max_apex") = 6, py::arg("seed") = 20240601);

  m.def("burnside_mackey", [](const std::string& ref) { return dump(io::write_mackey(burnside_mackey(group_of(ref)))); });
  m.def("validate_mackey",
        [](const std::string& doc) { return dump(io::write_report(validate(io::read_mackey(parse(doc))))); });

  m.def("check_axioms",
        [](const std::string& doc) { return dump(io::write_report(check_axioms(io::read_presentation(parse(doc))))); });
  m.def(
      "k0",
      [](const std::string& doc, bool force) {
        const SquaresPresentation p = io::read_presentation(parse(doc));
        return dump(io::write_k0(k0(p, {.force = force}), p.objects));
      },
      py::arg("presentation"), py::arg("force") = false);

  m.def(
      "sk_k0",
      [](const std::string& ref, int orbit, int bound) {
        GroupPtr g = group_of(ref);
        SubgroupLattice lat(g);
        if (orbit < 0 || orbit >= lat.class_count()) throw PreconditionError("orbit class out of range");
        const TruncatedSK cat = build_truncated(coset_space(g, lat.representative(orbit)), bound);
        const SKK0 k = sk_k0(cat);
        return dump(json{{"objects", cat.object_count()}, {"free_rank", k.k0.group.free_rank},
                         {"torsion", k.k0.group.torsion}});
      },
      py::arg("group"), py::arg("orbit"), py::arg("bound"));
  m.def(
      "k0_mackey",
      [](const std::string& ref, std::optional<int> bound) {
        const SKMackey r = k0_mackey(group_of(ref), bound);
        return dump(json{{"isomorphism", r.isomorphism}, {"ranks", r.ranks}, {"ranks_check", r.ranks_check},
                         {"functor", io::write_mackey(r.functor)}});
      },
      py::arg("group"), py::arg("bound") = py::none());
  m.def("phi_psi_check", [](const std::string& ref, std::vector<int> subgroup, int bound) {
    GroupPtr g = group_of(ref);
    return dump(io::write_report(phi_psi_check(g, io::read_subgroup(subgroup, *g), bound)));
  });
  m.def("beck_chevalley", [](const std::string& ref, int bound) {
    GroupPtr g = group_of(ref);
    const auto squares = orbit_pullback_squares(g);
    int failures = 0;
    for (const auto& sq : squares) failures += !beck_chevalley_check(sq, bound).passed();
    return dump(json{{"squares", squares.size()}, {"failures", failures}});
  });

  m.def("euler_characteristic", [](const std::string& doc) {
    const GCWComplex c = io::read_complex(parse(doc));
    BurnsideRing ring(c.group);
    const BurnsideElement chi = euler_characteristic(c, ring);
    return dump(json{{"chi", chi.coefficients}, {"marks", ring.marks(chi)}});
  });
  m.def("fixed_euler", [](const std::string& doc, std::vector<int> subgroup) {
    const GCWComplex c = io::read_complex(parse(doc));
    return fixed_euler(c, io::read_subgroup(subgroup, *c.group));
  });

  m.def("smith_normal_form", [](const std::vector<std::vector<std::int64_t>>& a) {
    const SmithResult s = smith_normal_form(IntMatrix::from_rows(a));
    return py::make_tuple(rows(s.S), rows(s.U), rows(s.V));
  });
}
