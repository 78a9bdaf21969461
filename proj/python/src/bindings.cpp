#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mplsym/hpl.hpp"

namespace py = pybind11;
using namespace mplsym;

namespace {

struct SymbolView {
    std::string text;
    int weight;
    std::vector<std::string> alphabet;
    std::vector<std::pair<std::vector<std::string>, std::string>> terms;
};

SymbolView view(const Symbol& S, const Alphabet& A) {
    SymbolView v{S.to_string(A), S.weight(), A.names(), {}};
    for (const auto& [w, c] : S.terms()) {
        std::vector<std::string> word;
        for (int i : w) word.push_back(A.name(i));
        v.terms.push_back({word, c.get_str()});
    }
    return v;
}

Alphabet session_alphabet(const ExprPtr& e, const RingPtr& ring, const std::vector<std::string>& letters) {
    if (letters.empty()) return expr_alphabet(e, ring);
    return Alphabet::from_strings(letters, ring);
}

SymbolView symbol(const std::string& text, const std::vector<std::string>& letters) {
    Parsed p = parse_expr(text);
    Alphabet A = session_alphabet(p.expr, p.ring, letters);
    return view(symbol_of(p.expr, A), A);
}

bool check_identity(const std::string& lhs, const std::string& rhs) {
    Parsed p = parse_expr(rhs == "0" ? lhs : "(" + lhs + ") - (" + rhs + ")");
    Alphabet A = expr_alphabet(p.expr, p.ring);
    return symbol_of(p.expr, A).is_zero();
}

std::string evaluate(const std::string& text, const std::map<std::string, std::string>& point, int digits) {
    Precision P(digits);
    std::map<std::string, Rational> pt;
    for (const auto& [k, v] : point) pt[k] = parse_rational(v);
    return format_real(eval_expr(parse_expr(text).expr, pt), digits);
}

py::dict integrate(const std::string& input) {
    Alphabet A = Alphabet::hpl();
    Symbol S = input.find('[') != std::string::npos ? parse_symbol(input, A, true)
                                                     : symbol_of(parse_expr(input, A.ring()).expr, A);
    IntegrationResult r = integrate_symbol(S, A);
    py::list levels;
    for (const auto& l : r.levels) {
        py::list coeffs;
        for (const auto& [name, c] : l.coeffs) coeffs.append(py::make_tuple(name, c.get_str()));
        levels.append(py::make_tuple(partition_to_string(l.lambda), coeffs));
    }
    py::dict d;
    d["expression"] = to_string(r.expression);
    d["residual"] = r.residual.to_string(A);
    d["levels"] = levels;
    return d;
}

py::dict hpl_reduce(const std::vector<int>& index, int digits) {
    HplReducer R(digits);
    HplReduction r = R.reduce(index);
    Precision P(digits);
    py::list diffs;
    for (const Rational& x : {Rational(1, 4), Rational(1, 3), Rational(1, 2)}) {
        Real d = abs(eval_expr(r.expression, {{"x", x}}) - eval_expr(hpl_expr(index), {{"x", x}}));
        diffs.append(py::make_tuple(to_string(x), format_real(d, 5)));
    }
    py::dict d;
    d["expression"] = to_string(r.expression);
    d["constants"] = to_string(r.fix.constants);
    d["symbol_equal"] = symbol_of(r.expression, R.alphabet()) == hpl_symbol(index);
    d["differences"] = diffs;
    return d;
}

std::vector<std::tuple<int, int, int, int, int, std::string, bool>> table2(int bound, int const_bound) {
    std::vector<std::tuple<int, int, int, int, int, std::string, bool>> out;
    for (const auto& r : table2_enumerate(bound, const_bound))
        out.emplace_back(r.s, r.alpha, r.beta, r.gamma, r.delta, r.value.to_string(), r.constant);
    return out;
}

SymbolView cmzv(const std::vector<int>& m, const std::vector<int>& s) {
    Alphabet A = Alphabet::from_strings({"2"}, make_ring({}));
    return view(cmzv_symbol(CMZVSpec{m, s}, A), A);
}

std::string polylog_value(int n, const std::string& z, int digits) {
    Precision P(digits);
    return format_real(polylog(n, parse_rational(z)), digits);
}

std::optional<std::string> reconstruct(const std::string& value, long maxden, int digits) {
    Precision P(digits);
    auto q = rational_reconstruct(Real(value), Integer(maxden), digits);
    if (!q) return std::nullopt;
    return q->get_str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Symbols and reductions of multiple polylogarithms";

    static py::exception<Error> error(m, "MplsymError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            error(e.what());
        }
    });

    py::class_<SymbolView>(m, "Symbol")
        .def_readonly("text", &SymbolView::text)
        .def_readonly("weight", &SymbolView::weight)
        .def_readonly("alphabet", &SymbolView::alphabet)
        .def_readonly("terms", &SymbolView::terms)
        .def("__repr__", [](const SymbolView& v) { return "Symbol(" + v.text + ")"; })
        .def("__str__", [](const SymbolView& v) { return v.text; });

    m.def("symbol", &symbol, py::arg("expression"), py::arg("alphabet") = std::vector<std::string>{});
    m.def("check_identity", &check_identity, py::arg("lhs"), py::arg("rhs") = "0");
    m.def("evaluate", &evaluate, py::arg("expression"), py::arg("point") = std::map<std::string, std::string>{},
          py::arg("digits") = 40);
    m.def("integrate", &integrate, py::arg("input"));
    m.def("hpl_reduce", &hpl_reduce, py::arg("index"), py::arg("digits") = 40);
    m.def("count_dissections", [](int n) { return enumerate_maximal_dissections(n).size(); }, py::arg("sides"));
    m.def("table2", &table2, py::arg("bound") = 4, py::arg("const_bound") = 2);
    m.def("cmzv_symbol", &cmzv, py::arg("m"), py::arg("s"));
    m.def("polylog", &polylog_value, py::arg("n"), py::arg("z"), py::arg("digits") = 40);
    m.def("reconstruct", &reconstruct, py::arg("value"), py::arg("maxden"), py::arg("digits") = 40);
}
