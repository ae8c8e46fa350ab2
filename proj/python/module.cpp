#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nilcover/cli.hpp"
#include "nilcover/covering.hpp"
#include "nilcover/witt_hall.hpp"

namespace py = pybind11;
using namespace nilcover;

namespace {

py::object to_py(const Int& v) {
  const std::string s = v.get_str();
  return py::reinterpret_steal<py::object>(PyLong_FromString(s.c_str(), nullptr, 10));
}

py::object order_py(const std::optional<Int>& v) {
  return v ? to_py(*v) : py::none();
}

CyclicFamily family(const std::vector<py::int_>& orders) {
  CyclicFamily f;
  for (const auto& e : orders) f.orders.emplace_back(py::str(e).cast<std::string>());
  return f;
}

py::dict invariants_py(const AbelianInvariants& a) {
  py::list torsion;
  for (const Int& t : a.torsion) torsion.append(to_py(t));
  py::dict d;
  d["torsion"] = torsion;
  d["free_rank"] = a.free_rank;
  return d;
}

py::dict report_py(const CoverReport& r) {
  py::dict d;
  py::list orders;
  for (const Int& e : r.family.orders) orders.append(to_py(e));
  d["orders"] = orders;
  d["n"] = r.n;
  d["c"] = r.c;
  d["decision"] = to_string(r.decision);
  d["product_order"] = order_py(r.product_order);
  d["product_class"] = r.product_class;
  d["has_cover"] = r.has_cover;
  d["order"] = order_py(r.cover_order);
  d["kernel"] = r.kernel ? py::object(invariants_py(*r.kernel)) : py::none();
  d["baer"] = invariants_py(r.baer);
  py::dict checks;
  for (const auto& [name, ok] : r.checks) checks[py::str(name)] = ok;
  d["checks"] = checks;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Nilpotent products of cyclic groups and their covering groups";

  py::register_exception<BoundsError>(m, "BoundsError", PyExc_ValueError);

  m.def("witt_rank", [](int rank, int weight) { return to_py(witt_rank(rank, weight)); },
        py::arg("rank"), py::arg("weight"),
        "Number of basic commutators of the given weight on `rank` generators.");

  m.def(
      "basis",
      [](int rank, int cls) {
        const HallBasis b(rank, cls);
        std::vector<std::pair<int, std::string>> out;
        for (std::size_t i = 0; i < b.size(); ++i) out.emplace_back(b.weight(i), b.render(i));
        return out;
      },
      py::arg("rank"), py::arg("cls"), "Hall basis as (weight, commutator) pairs.");

  m.def(
      "nilpotent_product",
      [](const std::vector<py::int_>& orders, int n) {
        const PcQuotient q = nilpotent_product(family(orders), n);
        const auto& basis = q.context()->basis();
        py::list rel;
        for (std::size_t i = 0; i < basis.size(); ++i) {
          auto r = q.relative_order(i);
          if (r && *r == 1) continue;
          rel.append(py::make_tuple(basis.render(i), order_py(r)));
        }
        py::dict d;
        d["order"] = order_py(q.order());
        d["class"] = class_of(q);
        d["relative_orders"] = rel;
        return d;
      },
      py::arg("orders"), py::arg("n"),
      "Order (None if infinite), class and relative orders of the n-th "
      "nilpotent product.");

  m.def(
      "baer_invariant",
      [](const std::vector<py::int_>& orders, int n, int c) {
        return invariants_py(baer_invariant(family(orders), n, c));
      },
      py::arg("orders"), py::arg("n"), py::arg("c"));

  m.def(
      "verify_cover",
      [](const std::vector<py::int_>& orders, int n, int c) {
        const CyclicFamily f = family(orders);
        CoverReport r;
        {
          py::gil_scoped_release release;
          r = verify_cover(f, n, c);
        }
        return report_py(r);
      },
      py::arg("orders"), py::arg("n"), py::arg("c"));

  m.def(
      "decide",
      [](const std::vector<py::int_>& orders, int n, int c) {
        const CyclicFamily f = family(orders);
        CoverReport r;
        {
          py::gil_scoped_release release;
          r = decide(f, n, c);
        }
        return report_py(r);
      },
      py::arg("orders"), py::arg("n"), py::arg("c"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line front end; returns (exit code, stdout, stderr).");
}
