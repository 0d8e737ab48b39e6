#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "trades/algebra.hpp"
#include "trades/core.hpp"
#include "trades/inclusion.hpp"
#include "trades/search.hpp"
#include "trades/ttf.hpp"

namespace py = pybind11;
using namespace trades;

namespace {

Side side_from_lists(const std::vector<std::vector<Label>>& blocks) {
  std::vector<Block> bs;
  for (auto b : blocks) bs.push_back(make_block(std::move(b)));
  return Side::from_blocks(bs);
}

Trade trade_from_lists(int t, const std::vector<std::vector<Label>>& t1,
                       const std::vector<std::vector<Label>>& t2) {
  Validation v = validate(CandidatePair{t, side_from_lists(t1), side_from_lists(t2)});
  if (!v.ok()) throw py::value_error(v.error);
  return *v.trade;
}

std::vector<std::vector<Label>> side_to_lists(const Side& s) {
  std::vector<std::vector<Label>> out;
  for (const Block& b : s.expanded()) out.push_back(b);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "t-(v,k) trade toolkit: construction, algebra, and exhaustive "
            "volume-gap search";

  py::class_<Trade>(m, "Trade")
      .def(py::init(&trade_from_lists), py::arg("t"), py::arg("t1"), py::arg("t2"))
      .def_property_readonly("t", &Trade::strength)
      .def_property_readonly("k", &Trade::block_size)
      .def_property_readonly("volume", &Trade::volume)
      .def_property_readonly("foundation", &Trade::foundation)
      .def_property_readonly("t1", [](const Trade& tr) { return side_to_lists(tr.first()); })
      .def_property_readonly("t2", [](const Trade& tr) { return side_to_lists(tr.second()); })
      .def("is_steiner", [](const Trade& tr) { return is_steiner(tr); })
      .def("is_simple", [](const Trade& tr) { return is_simple(tr); })
      .def("replication", [](const Trade& tr, Label x) { return replication(tr, x); })
      .def("pair_index",
           [](const Trade& tr, Label x, Label y) { return pair_index(tr, x, y); })
      .def("canonical", [](const Trade& tr) { return canonical_form(tr); })
      .def("to_ttf", [](const Trade& tr) { return to_ttf(tr); })
      .def("__eq__", [](const Trade& a, const Trade& b) { return a == b; })
      .def("__repr__", [](const Trade& tr) {
        std::ostringstream os;
        os << "<Trade t=" << tr.strength() << " k=" << tr.block_size()
           << " volume=" << tr.volume() << " foundation=" << tr.foundation().size()
           << ">";
        return os.str();
      });

  m.def("validate_ttf", [](const std::string& text) {
    std::istringstream in(text);
    Validation v = validate(read_ttf(in));
    if (!v.ok()) throw py::value_error(v.error);
    return *v.trade;
  });
  m.def("minimal_trade", [](int t, int k) { return minimal_trade(t, k); },
        py::arg("t"), py::arg("k"));
  m.def("minimal_trade",
        [](int t, int k, const std::vector<Label>& labels) {
          return minimal_trade(t, k, labels);
        },
        py::arg("t"), py::arg("k"), py::arg("labels"));
  m.def("derived_trade",
        [](const Trade& tr, Label x) { return derived_trade(tr, x); });
  m.def("trade_sum", [](const Trade& a, const Trade& b) {
    return sum(a, b);  // None on total cancellation
  });
  m.def("trade_difference",
        [](const Trade& a, const Trade& b) { return difference(a, b); });
  m.def("are_isomorphic",
        [](const Trade& a, const Trade& b) { return are_isomorphic(a, b); });
  m.def("forbidden_volumes", &forbidden_volumes, py::arg("t"));
  m.def("foundation_bounds", [](int t, int k, int s) {
    return foundation_bounds({.t = t, .k = k, .s = s});
  });

  py::enum_<SearchStatus>(m, "SearchStatus")
      .value("exhausted_empty", SearchStatus::exhausted_empty)
      .value("witnesses_found", SearchStatus::witnesses_found)
      .value("budget_exceeded", SearchStatus::budget_exceeded);

  m.def(
      "search",
      [](int t, int k, int s, const std::string& mode, std::optional<int> max_foundation,
         std::optional<std::uint64_t> node_budget, int workers) {
        auto m_ = parse_mode(mode);
        if (!m_) throw py::value_error("mode must be steiner|simple|general");
        SearchSpec spec{.t = t, .k = k, .s = s, .mode = *m_,
                        .max_foundation = max_foundation, .node_budget = node_budget,
                        .worker_count = workers};
        SearchOutcome out = enumerate_trades(spec);
        py::dict d;
        d["status"] = status_name(out.status);
        d["witnesses"] = out.witnesses;
        d["nodes_visited"] = out.nodes_visited;
        d["max_depth"] = out.max_depth;
        d["runtime_seconds"] = out.runtime_seconds;
        return d;
      },
      py::arg("t"), py::arg("k"), py::arg("s"), py::arg("mode") = "steiner",
      py::arg("max_foundation") = std::nullopt, py::arg("node_budget") = std::nullopt,
      py::arg("workers") = 1);

  m.def(
      "verify_gaps",
      [](int t, const std::string& mode, std::optional<std::uint64_t> budget,
         int workers) {
        auto m_ = parse_mode(mode);
        if (!m_) throw py::value_error("mode must be steiner|simple|general");
        GapReport rep = verify_gaps(t, *m_, budget, workers);
        py::dict d;
        d["verified"] = rep.verified;
        py::list entries;
        for (const auto& e : rep.entries) {
          py::dict ed;
          ed["s"] = e.s;
          ed["status"] = status_name(e.status);
          ed["nodes"] = e.nodes;
          entries.append(ed);
        }
        d["entries"] = entries;
        return d;
      },
      py::arg("t"), py::arg("mode") = "steiner", py::arg("node_budget") = std::nullopt,
      py::arg("workers") = 1);
}
