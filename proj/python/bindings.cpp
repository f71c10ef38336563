// Python bindings. Node, packet, vertex and edge ids are 1-based on the
// Python side, as in the .frc format.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "frhyper/analysis.hpp"
#include "frhyper/bounds.hpp"
#include "frhyper/construct.hpp"
#include "frhyper/error.hpp"
#include "frhyper/frc_io.hpp"
#include "frhyper/model.hpp"

namespace py = pybind11;
using namespace frhyper;

namespace {

using Lists = std::vector<std::vector<Index>>;

Lists one_based(const std::vector<IdSet>& sets) {
  Lists out;
  for (const auto& s : sets) {
    std::vector<Index> row;
    for (Index id : s) row.push_back(id + 1);
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<Index> one_based(const IdSet& ids) {
  std::vector<Index> out;
  for (Index id : ids) out.push_back(id + 1);
  return out;
}

IdSet zero_based(const std::vector<Index>& ids) {
  IdSet out;
  for (Index id : ids) {
    if (id == 0) throw Error(ErrorCode::IdOutOfRange, "ids are 1-based", 0);
    out.push_back(id - 1);
  }
  return out;
}

std::vector<IdSet> zero_based(const Lists& lists) {
  std::vector<IdSet> out;
  for (const auto& l : lists) out.push_back(zero_based(l));
  return out;
}

EnumerationGuard guard_for(bool force) { return EnumerationGuard::from_environment(force); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fractional repetition codes and their hypergraphs";

  static py::exception<Error> frc_error(m, "FrcError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      std::string message = std::string(to_string(e.code())) + ": " + e.what();
      PyErr_SetString(frc_error.ptr(), message.c_str());
    }
  });

  py::class_<FRCode>(m, "FRCode")
      .def(py::init([](const Lists& nodes, Index theta) { return fr_from_one_based(nodes, theta); }),
           py::arg("nodes"), py::arg("theta"))
      .def_property_readonly("n", &FRCode::num_nodes)
      .def_property_readonly("theta", &FRCode::num_packets)
      .def_property_readonly("nodes", [](const FRCode& c) { return one_based(c.nodes()); })
      .def_property_readonly("alpha_vec", &FRCode::storage_vector)
      .def_property_readonly("rho_vec", &FRCode::replication_vector)
      .def_property_readonly("alpha", &FRCode::max_storage)
      .def_property_readonly("rho", &FRCode::max_replication)
      .def("__eq__", [](const FRCode& a, const FRCode& b) { return a == b; })
      .def("__repr__", [](const FRCode& c) { return "FRCode(" + format_nodes(c) + ")"; });

  py::class_<Hypergraph>(m, "Hypergraph")
      .def(py::init([](Index nv, const Lists& edges) { return Hypergraph(nv, zero_based(edges)); }),
           py::arg("num_vertices"), py::arg("edges"))
      .def_property_readonly("num_vertices", &Hypergraph::num_vertices)
      .def_property_readonly("edges", [](const Hypergraph& h) { return one_based(h.edges()); })
      .def_property_readonly("degrees", &Hypergraph::degrees)
      .def("__eq__", [](const Hypergraph& a, const Hypergraph& b) { return a == b; });

  py::class_<ClassificationFlags>(m, "ClassificationFlags")
      .def_readonly("uniform_size", &ClassificationFlags::uniform_size)
      .def_readonly("regular_degree", &ClassificationFlags::regular_degree)
      .def_readonly("linear", &ClassificationFlags::linear)
      .def_readonly("intersecting", &ClassificationFlags::intersecting)
      .def_readonly("connected", &ClassificationFlags::connected)
      .def_property_readonly("uniform", &ClassificationFlags::uniform)
      .def_property_readonly("regular", &ClassificationFlags::regular);

  m.def("fr_to_hypergraph", &fr_to_hypergraph);
  m.def("hypergraph_to_fr", &hypergraph_to_fr);
  m.def("dual", [](const Hypergraph& h) { return dual(h).first; });
  m.def("dual_code", [](const FRCode& c) { return dual(c); });
  m.def("classify", &classify);
  m.def("is_universally_good", &is_universally_good);

  m.def("max_file_size",
        [](const FRCode& c, Index k, bool force) { return max_file_size(c, k, guard_for(force)); },
        py::arg("code"), py::arg("k"), py::arg("force") = false);
  m.def("file_size_table",
        [](const FRCode& c, bool force) { return file_size_table(c, guard_for(force)); },
        py::arg("code"), py::arg("force") = false);
  m.def("reconstruction_degree",
        [](const FRCode& c, Index m, bool force) {
          return reconstruction_degree(c, m, guard_for(force));
        },
        py::arg("code"), py::arg("file_size"), py::arg("force") = false);
  m.def("repair_degree",
        [](const FRCode& c, Index node, bool force) {
          if (node == 0) throw Error(ErrorCode::InvalidArgument, "node ids are 1-based");
          auto r = repair_degree(c, node - 1, guard_for(force));
          return py::make_tuple(r.degree, one_based(r.helpers));
        },
        py::arg("code"), py::arg("node"), py::arg("force") = false);
  m.def("min_distance",
        [](const FRCode& c, Index m, bool force) { return min_distance(c, m, guard_for(force)); },
        py::arg("code"), py::arg("file_size"), py::arg("force") = false);
  m.def("adapt",
        [](const FRCode& c, const std::vector<Index>& nodes, const std::vector<Index>& packets) {
          return adapt(c, {zero_based(nodes), zero_based(packets)});
        },
        py::arg("code"), py::arg("remove_nodes") = std::vector<Index>{},
        py::arg("remove_packets") = std::vector<Index>{});
  m.def("is_adaptation_of",
        [](const FRCode& smaller, const FRCode& larger, bool force) -> py::object {
          auto spec = is_adaptation_of(smaller, larger, guard_for(force));
          if (!spec) return py::none();
          return py::make_tuple(one_based(spec->removed_nodes), one_based(spec->removed_packets));
        },
        py::arg("smaller"), py::arg("larger"), py::arg("force") = false);

  m.def("existence_check", [](const std::vector<Index>& alpha, const std::vector<Index>& rho) {
    return std::string(to_string(existence_check({alpha, rho})));
  });
  m.def("realize", [](const std::vector<Index>& alpha, const std::vector<Index>& rho) {
    return realize({alpha, rho});
  });
  m.def(
      "check_bounds",
      [](const FRCode& c, std::optional<Index> k, bool force) {
        py::list out;
        for (const auto& e : check_bounds(c, k, guard_for(force)).entries) {
          py::dict d;
          d["id"] = e.id;
          d["applicable"] = e.applicable;
          d["reason"] = e.reason;
          d["lhs"] = to_string(e.lhs);
          d["rhs"] = to_string(e.rhs);
          d["satisfied"] = e.satisfied;
          d["tight"] = e.tight;
          out.append(std::move(d));
        }
        return out;
      },
      py::arg("code"), py::arg("k") = py::none(), py::arg("force") = false);

  m.def(
      "construct",
      [](Index n, Index rho_min, std::optional<std::uint64_t> seed, std::optional<Index> theta) {
        auto strategy = seed ? StrategySpec::random(*seed) : StrategySpec::greedy();
        auto state = grow_linear(n, rho_min, strategy, theta);
        return py::make_tuple(state.current(), trace_rows(state));
      },
      py::arg("n"), py::arg("rho_min") = 2, py::arg("seed") = py::none(),
      py::arg("theta") = py::none());

  m.def("parse_frc", [](const std::string& text) -> py::object {
    auto doc = parse_frc(text);
    if (auto* c = std::get_if<FRCode>(&doc.body)) return py::cast(*c);
    return py::cast(std::get<Hypergraph>(doc.body));
  });
  m.def("serialize", [](const FRCode& c) { return serialize(c); });
  m.def("serialize", [](const Hypergraph& h) { return serialize(h); });
  m.def(
      "filesize_csv",
      [](const FRCode& c, Index first, Index last, bool force) {
        return emit_filesize_csv(c, first, last, guard_for(force));
      },
      py::arg("code"), py::arg("k_first"), py::arg("k_last"), py::arg("force") = false);
}
