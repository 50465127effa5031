#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "torsornet/commands.hpp"

namespace py = pybind11;
using namespace torsornet;

namespace {

py::dict result_to_dict(const CommandResult& r) {
    py::dict d;
    d["exit_code"] = r.exit_code;
    d["human"] = r.human;
    d["machine"] = r.machine.dump();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sheaf cohomology of group networks: torsor analysis and paradox classification";

    m.def(
        "analyze",
        [](const std::string& spec_path, const std::string& basepoint) {
            CommandOptions opt;
            opt.basepoint = basepoint;
            return result_to_dict(cmd_analyze(spec_path, opt));
        },
        py::arg("spec_path"), py::arg("basepoint") = "",
        "Holonomy, invariants, and triviality of a cocycle");

    m.def(
        "compare",
        [](const std::string& spec_a, const std::string& spec_b,
           const std::optional<std::string>& morphism, std::size_t max_search) {
            CommandOptions opt;
            opt.max_search = max_search;
            return result_to_dict(cmd_compare(spec_a, spec_b, morphism, opt));
        },
        py::arg("spec_a"), py::arg("spec_b"), py::arg("morphism") = py::none(),
        py::arg("max_search") = 1000000,
        "Isomorphism and fiber equivalence of two paradoxes");

    m.def(
        "cohomology",
        [](const std::string& spec_path) { return result_to_dict(cmd_cohomology(spec_path, {})); },
        py::arg("spec_path"), "H0 and H1 of an abelian network sheaf");

    m.def(
        "classify_tree",
        [](const std::string& spec_path, std::size_t max_search) {
            CommandOptions opt;
            opt.max_search = max_search;
            return result_to_dict(cmd_classify_tree(spec_path, opt));
        },
        py::arg("spec_path"), py::arg("max_search") = 1000000,
        "Boundary-data classes of a tree up to symmetry");

    m.def(
        "gallery",
        [](const std::string& only) {
            CommandOptions opt;
            opt.only = only;
            return result_to_dict(cmd_gallery(opt));
        },
        py::arg("only") = "", "Run the built-in example gallery against expected values");

    m.def(
        "roundtrip_spec",
        [](const std::string& text) {
            return spec_to_json(parse_spec(nlohmann::json::parse(text))).dump(2);
        },
        py::arg("text"), "Parse a spec document and serialize it back in canonical form");
}
