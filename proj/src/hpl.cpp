#include "mplsym/hpl.hpp"

#include <sstream>

namespace mplsym {

namespace {

struct Entry {
    int w, i;
    const char* text;
};

const Entry kSpanning[] = {
    {1, 1, "log(x)"},
    {1, 2, "log(1-x)"},
    {1, 3, "log(1+x)"},
    {1, 4, "ln2"},
    {2, 1, "Li2(x)"},
    {2, 2, "Li2(-x)"},
    {2, 3, "Li2((1-x)/2)"},
    {3, 1, "Li3(x)"},
    {3, 2, "Li3(-x)"},
    {3, 3, "Li3(1-x)"},
    {3, 4, "Li3(1/(1+x))"},
    {3, 5, "Li3((1+x)/2)"},
    {3, 6, "Li3((1-x)/2)"},
    {3, 7, "Li3((1-x)/(1+x))"},
    {3, 8, "Li3(2*x/(x-1))"},
    {4, 1, "Li4(x)"},
    {4, 2, "Li4(-x)"},
    {4, 3, "Li4(1-x)"},
    {4, 4, "Li4(1/(1+x))"},
    {4, 5, "Li4(x/(x-1))"},
    {4, 6, "Li4(x/(x+1))"},
    {4, 7, "Li4((1+x)/2)"},
    {4, 8, "Li4((1-x)/2)"},
    {4, 9, "Li4((1-x)/(1+x))"},
    {4, 10, "Li4((x-1)/(x+1))"},
    {4, 11, "Li4(2*x/(x+1))"},
    {4, 12, "Li4(2*x/(x-1))"},
    {4, 13, "Li4(1-x^2)"},
    {4, 14, "Li4(x^2/(x^2-1))"},
    {4, 15, "Li4(4*x/(x+1)^2)"},
    {4, 16, "Li[2,2](-1,x)"},
    {4, 17, "Li[2,2](1/2,2*x/(x+1))"},
    {4, 18, "Li[2,2](1/2,2*x/(x-1))"},
};

bool in_restricted(int w, int i) {
    switch (w) {
        case 1:
            return i <= 2;
        case 2:
            return i == 1;
        case 3:
            return i == 1 || i == 3;
        case 4:
            return i == 1 || i == 3 || i == 5;
    }
    return false;
}

}  // namespace

std::vector<BasisFunction> hpl_spanning_set(bool restricted) {
    Alphabet A = Alphabet::hpl();
    std::vector<BasisFunction> out;
    for (const Entry& e : kSpanning) {
        if (restricted && !in_restricted(e.w, e.i)) continue;
        out.push_back(make_basis_function(parse_expr(e.text, A.ring()).expr, A));
    }
    return out;
}

std::string hpl_basis_label(const ExprPtr& e) {
    static std::map<std::string, std::string> table = [] {
        std::map<std::string, std::string> t;
        Alphabet A = Alphabet::hpl();
        for (const Entry& e : kSpanning)
            t[to_string(parse_expr(e.text, A.ring()).expr)] =
                "B" + std::to_string(e.w) + "(" + std::to_string(e.i) + ")";
        return t;
    }();
    auto it = table.find(to_string(e));
    return it == table.end() ? "" : it->second;
}

std::vector<Table2Row> table2_enumerate(int bound, int const_bound) {
    Alphabet A = Alphabet::hpl();
    int i2 = A.find(MPoly(2).lifted(A.ring()));
    int ix = A.find(parse_ratfunc("x", A.ring()).num());
    int i1m = A.find(parse_ratfunc("1-x", A.ring()).num());
    int i1p = A.find(parse_ratfunc("1+x", A.ring()).num());
    std::vector<Table2Row> out;
    for (const auto& c : candidate_args_depth1(A, bound, const_bound)) {
        auto get = [&](int i) {
            auto it = c.exps.find(i);
            return it == c.exps.end() ? 0 : it->second;
        };
        out.push_back({c.sign, get(ix), get(i1m), get(i1p), get(i2), c.value, c.value.is_constant()});
    }
    return out;
}

ExprPtr hpl_expr(const std::vector<int>& a) {
    Alphabet A = Alphabet::hpl();
    return make_H(a, parse_ratfunc("x", A.ring()));
}

Symbol hpl_symbol(const std::vector<int>& a) { return symbol_of(hpl_expr(a), Alphabet::hpl()); }

std::vector<std::vector<int>> hpl_indices(int w) {
    std::vector<std::vector<int>> out = {{}};
    for (int k = 0; k < w; ++k) {
        std::vector<std::vector<int>> next;
        for (const auto& v : out)
            for (int d : {-1, 0, 1}) {
                auto u = v;
                u.push_back(d);
                next.push_back(u);
            }
        out = std::move(next);
    }
    return out;
}

std::string index_to_string(const std::vector<int>& a) {
    std::string s;
    for (size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s;
}

std::vector<int> parse_index(const std::string& s) {
    std::vector<int> a;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw ParseError("bad HPL index '" + tok + "'");
        }
        if (tok.find_first_not_of(" \t", used) != std::string::npos) throw ParseError("bad HPL index '" + tok + "'");
        if (v < -1 || v > 1) throw PreconditionViolated("HPL indices must lie in {-1,0,1}");
        a.push_back(v);
    }
    if (a.empty()) throw ParseError("empty HPL index");
    return a;
}

HplReducer::HplReducer(int digits) : digits_(digits), A_(Alphabet::hpl()), full_(hpl_spanning_set(false)) {
    full_int_ = std::make_unique<Integrator>(A_, full_);
    small_int_ = std::make_unique<Integrator>(A_, hpl_spanning_set(true));
}

HplReduction HplReducer::reduce(const std::vector<int>& a) {
    if (a.empty() || a.size() > 4) throw PreconditionViolated("HPL reduction covers weights 1 to 4");
    bool binary = std::all_of(a.begin(), a.end(), [](int v) { return v == 0 || v == 1; });
    HplReduction r;
    r.index = a;
    Symbol S = hpl_symbol(a);
    r.integration = (binary ? small_int_ : full_int_)->integrate(S, false);
    ExprPtr h = hpl_expr(a);
    auto target = [&](const Rational& x) { return eval_expr(h, {{"x", x}}); };
    FixOptions opt;
    opt.digits = digits_;
    r.fix = fix_constants(target, r.integration.expression, int(a.size()), full_, opt);
    r.expression = r.fix.expression;
    return r;
}

}  // namespace mplsym
