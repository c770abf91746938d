#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nusys/convert.hpp"
#include "nusys/error.hpp"
#include "nusys/experiments.hpp"
#include "nusys/lsystem.hpp"
#include "nusys/measures.hpp"

namespace py = pybind11;

namespace {

nusys::SystemKind kind_arg(const std::string& name) {
    const auto kind = nusys::kind_from_name(name);
    if (!kind)
        throw std::invalid_argument("unknown system kind '" + name + "'");
    return *kind;
}

nusys::AnySystem parse(const std::string& text, const std::optional<std::string>& kind) {
    return nusys::parse_any(text, kind ? std::optional(kind_arg(*kind)) : std::nullopt);
}

std::tuple<std::uint64_t, std::uint64_t> as_pair(const nusys::Rational& r) { return {r.num(), r.den()}; }

py::list rows(const std::vector<nusys::ExperimentRow>& rs) {
    py::list out;
    for (const auto& r : rs) {
        py::dict row;
        row["d"] = r.d;
        row["n"] = r.n;
        row["size"] = r.size;
        row["delta"] = as_pair(r.delta);
        row["z"] = r.z;
        row["elapsed_ms"] = r.elapsed_ms;
        out.append(row);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    auto base = py::register_exception<nusys::ValidityError>(m, "ValidityError", PyExc_ValueError);
    py::register_exception<nusys::CycleError>(m, "CycleError", base.ptr());
    py::register_exception<nusys::ParseError>(m, "ParseError", PyExc_ValueError);
    auto limit = py::register_exception<nusys::LimitError>(m, "LimitError", PyExc_RuntimeError);
    py::register_exception<nusys::OverflowError>(m, "OverflowError", limit.ptr());

    m.def("delta", [](const std::string& w) { return as_pair(nusys::delta(w)); }, py::arg("w"));
    m.def("string_complexity", &nusys::string_complexity, py::arg("w"), py::arg("k"));
    m.def("complexity_profile", &nusys::complexity_profile, py::arg("w"));
    m.def(
        "lz76_parse",
        [](const std::string& w) {
            std::vector<std::tuple<std::uint64_t, std::uint64_t, std::optional<std::uint64_t>>> out;
            for (const auto& p : nusys::lz76_parse(w).phrases)
                out.emplace_back(p.start, p.length, p.source);
            return out;
        },
        py::arg("w"));
    m.def("z", &nusys::lz76_size, py::arg("w"));
    m.def("gamma_bruteforce", &nusys::gamma_bruteforce, py::arg("w"), py::arg("limit") = nusys::kDefaultGammaLimit);
    m.def("b_bruteforce", &nusys::b_bruteforce, py::arg("w"), py::arg("limit") = nusys::kDefaultBLimit);
    m.def("is_attractor", &nusys::is_attractor, py::arg("w"), py::arg("positions"));

    m.def(
        "decode", [](const std::string& text, std::optional<std::string> kind) { return nusys::decode_any(parse(text, kind)); },
        py::arg("text"), py::arg("kind") = py::none());
    m.def(
        "describe",
        [](const std::string& text, std::optional<std::string> kind) {
            const auto s = parse(text, kind);
            const auto n = nusys::decode_any(s).size();
            return std::tuple(std::string(nusys::kind_name(nusys::kind_of(s))), nusys::size(s), n);
        },
        py::arg("text"), py::arg("kind") = py::none());
    m.def(
        "convert",
        [](const std::string& text, const std::string& to, std::optional<std::string> from, bool check) {
            const auto source = parse(text, from);
            const auto target = nusys::convert(source, kind_arg(to));
            if (check)
                nusys::check_conversion(source, target);
            return nusys::to_text(target);
        },
        py::arg("text"), py::arg("to"), py::arg("from_kind") = py::none(), py::arg("check") = false);

    m.def("delta_sep_system", [](std::uint64_t d) { return nusys::to_text(nusys::delta_sep_system(d)); }, py::arg("d"));
    m.def("thue_morse_system", [](std::uint64_t k) { return nusys::to_text(nusys::thue_morse_system(k)); }, py::arg("k"));
    m.def(
        "delta_vs_ell", [](std::uint64_t lo, std::uint64_t hi, bool timing) { return rows(nusys::delta_vs_ell(lo, hi, timing)); },
        py::arg("d_min"), py::arg("d_max"), py::arg("timing") = false);
    m.def(
        "thue_morse_z", [](std::uint64_t lo, std::uint64_t hi, bool timing) { return rows(nusys::thue_morse_z(lo, hi, timing)); },
        py::arg("k_min"), py::arg("k_max"), py::arg("timing") = false);
}
