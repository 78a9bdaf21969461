#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace mplsym;

namespace {

Symbol sym(const std::string& text, const Alphabet& A) { return symbol_of(parse_expr(text, A.ring()).expr, A); }

std::vector<std::vector<int>> compositions(int w) {
    if (w == 0) return {{}};
    std::vector<std::vector<int>> out;
    for (int k = 1; k <= w; ++k)
        for (auto c : compositions(w - k)) {
            c.insert(c.begin(), k);
            out.push_back(c);
        }
    return out;
}

}  // namespace

TEST_SUITE("mpl") {
    TEST_CASE("parsing") {
        auto p = parse_expr("Li2(y/x) + G(a,b;y)");
        CHECK(p.ring->vars == std::vector<std::string>{"a", "b", "x", "y"});
        CHECK(weight(p.expr) == 2);
        CHECK(weight(parse_expr("zeta3*log(1-x) + pi^4/90").expr) == 4);
        CHECK(expr_variables("H(1,0;x)*log(1+y)") == std::vector<std::string>{"x", "y"});
        CHECK_THROWS_AS(parse_expr("G(1,;x)"), ParseError);
        CHECK_THROWS_AS(parse_expr("Li2(x"), ParseError);
        CHECK_THROWS_AS(symbol_of(parse_expr("log(0)").expr, Alphabet::hpl()), ZeroArgument);
        CHECK_THROWS_AS(weight(parse_expr("G(1;x) + log(x)^2").expr), MixedWeight);
        CHECK_THROWS_AS(parse_expr("H(2,0;x)"), Error);
        auto q = parse_expr(to_string(parse_expr("Li[2,2](1/2,2*x/(x+1)) - 1/3*H(0,-1;x)*ln2^2").expr));
        CHECK(to_string(q.expr) == to_string(parse_expr("Li[2,2](1/2,2*x/(x+1)) - 1/3*H(0,-1;x)*ln2^2").expr));
    }

    TEST_CASE("symbols of classical functions") {
        Alphabet A = Alphabet::hpl();
        CHECK(sym("Li2(x)", A) == parse_symbol("-[1-x | x]", A));
        CHECK(sym("log(x)^2/2", A) == parse_symbol("[x | x]", A));
        CHECK(sym("Li4half + ln2^4/24", A).is_zero());
        CHECK(sym("pi^2", A).is_zero());
        CHECK(sym("zeta3*log(x)", A).is_zero());
        CHECK(sym("ln2", A) == parse_symbol("[2]", A));
        CHECK(sym("H(1,0;x)", A) == parse_symbol("-[x | 1-x]", A));
        CHECK(sym("S[1,2](x) - H(0,1,1;x)", A).is_zero());
        CHECK(sym("Li3(1-x) + Li3(x) + Li3(1-1/x) - log(x)^3/6 + log(x)^2*log(1-x)/2", A).is_zero());
        CHECK(sym("Li2(x) + Li2(1-x) + log(x)*log(1-x)", A).is_zero());
        CHECK(sym("G(-1;x)*G(1;x) - G(-1,1;x) - G(1,-1;x)", A).is_zero());
        CHECK(sym("G(-1,1;x)", A) == parse_symbol("[1+x | 2] - [1-x | 2] + [1-x | 1+x]", A));
    }

    TEST_CASE("symbol map is a homomorphism") {
        Alphabet A = Alphabet::hpl();
        std::mt19937 rng(11);
        std::uniform_int_distribution<int> D(-1, 1), W(1, 3);
        for (int t = 0; t < 20; ++t) {
            std::vector<int> a(W(rng)), b(std::uniform_int_distribution<int>(1, 5 - int(a.size()))(rng));
            for (int& v : a) v = D(rng);
            for (int& v : b) v = D(rng);
            ExprPtr ha = hpl_expr(a), hb = hpl_expr(b);
            CHECK(symbol_of(ha * hb, A) == shuffle(symbol_of(ha, A), symbol_of(hb, A)));
        }
        auto R = make_ring({"a", "b", "x"});
        RatFunc a = parse_ratfunc("a", R), b = parse_ratfunc("b", R), x = parse_ratfunc("x", R);
        Alphabet G = generic_alphabet(polygon_of_G({a, b}, x));
        CHECK(symbol_of(make_G({a}, x) * make_G({b}, x), G) ==
              shuffle(symbol_of(make_G({a}, x), G), symbol_of(make_G({b}, x), G)));
        CHECK(symbol_of(make_G({a}, x) * make_G({b}, x), G) == symbol_of(g_shuffle_expand({a}, {b}, x), G));
    }

    TEST_CASE("rescaling invariance") {
        auto R = make_ring({"a", "b", "c", "x"});
        auto f = [&](const char* s) { return parse_ratfunc(s, R); };
        std::vector<std::vector<RatFunc>> cases = {
            {f("a")}, {f("a"), f("b")}, {f("a"), f("0"), f("b")}, {f("0"), f("a"), f("b"), f("c")}, {f("a"), f("b"), f("c")}};
        for (const Rational& k : {Rational(3), Rational(-2, 5)})
            for (const auto& a : cases) {
                std::vector<RatFunc> ka;
                for (const auto& v : a) ka.push_back(RatFunc(k) * v);
                ExprPtr g = make_G(a, f("x")), kg = make_G(ka, RatFunc(k) * f("x"));
                Alphabet A = expr_alphabet(g - kg, R);
                CHECK(symbol_of(g, A) == symbol_of(kg, A));
            }
    }

    TEST_CASE("Li and G conversion") {
        auto R = make_ring({"x", "y"});
        RatFunc x = parse_ratfunc("x", R), y = parse_ratfunc("y", R);
        CHECK(to_string(li_to_g({1, 1}, {x, y})) == to_string(make_G({y.inverse(), (x * y).inverse()}, RatFunc(1))));
        CHECK(to_string(li_to_g({2}, {x})) == to_string(scaled(-1, make_G({RatFunc(0), x.inverse()}, RatFunc(1)))));
        for (const auto& [m, args] : std::vector<std::pair<std::vector<int>, std::vector<RatFunc>>>{
                 {{2}, {x}}, {{1, 1}, {x, y}}, {{2, 3}, {x, y}}, {{3, 1, 2}, {x, y, x * y}}}) {
            ExprPtr g = li_to_g(m, args);
            CHECK(to_string(g_to_li(g)) == to_string(make_Li(m, args)));
        }
        Alphabet A = Alphabet::hpl();
        RatFunc hx = parse_ratfunc("x", A.ring());
        CHECK(symbol_of(li_to_g({2}, {hx}), A) == sym("Li2(x)", A));
        ExprPtr li = parse_expr("Li[2,3](x,2/(1+x))", A.ring()).expr;
        CHECK(symbol_of(li_to_g(li->index, li->args), A) == symbol_of(li, A));
    }

    TEST_CASE("shuffle expansion and trailing zeros") {
        auto R = make_ring({"a", "b", "x"});
        RatFunc a = parse_ratfunc("a", R), b = parse_ratfunc("b", R), x = parse_ratfunc("x", R), z(0);
        CHECK(to_string(g_shuffle_expand({a}, {b}, x)) == to_string(make_G({a, b}, x) + make_G({b, a}, x)));
        ExprPtr red = g_extract_trailing_zeros({a, z, z}, x);
        ExprPtr expected = make_G({z, z}, x) * make_G({a}, x) + make_G({z, z, a}, x) - make_G({z, a}, x) * make_G({z}, x);
        Alphabet A = expr_alphabet(red - make_G({a, z, z}, x), R);
        CHECK(symbol_of(red, A) == symbol_of(make_G({a, z, z}, x), A));
        CHECK(symbol_of(expected, A) == symbol_of(red, A));
        for (const auto& m : expand(red))
            for (const auto& f : m.factors)
                if (f->kind == Kind::G) CHECK((!f->args.back().is_zero() || std::all_of(f->args.begin(), f->args.end(), [](const RatFunc& v) { return v.is_zero(); })));
        Precision P(40);
        std::map<std::string, Rational> pt = {{"a", Rational(-2)}, {"b", Rational(3)}, {"x", Rational(1, 3)}};
        CHECK(testsupport::close(eval_expr(red, pt), eval_expr(make_G({a, z, z}, x), pt), 30));
        CHECK(testsupport::close(eval_expr(expected, pt), eval_expr(red, pt), 30));
    }

    TEST_CASE("Hoelder duality") {
        std::vector<Rational> vals = {Rational(-1), Rational(2), Rational(1, 2)};
        Alphabet K = Alphabet::from_strings({"2"}, make_ring({}));
        CHECK(symbol_of(make_G({RatFunc(-1)}, RatFunc(1)), K) == Symbol::letter(0));
        CHECK(to_string(hoelder_dual(make_G({RatFunc(-1)}, RatFunc(1)))) ==
              to_string(scaled(-1, make_G({RatFunc(2)}, RatFunc(1)))));
        int checked = 0;
        for (int n = 1; n <= 4; ++n) {
            int total = 1;
            for (int i = 0; i < n; ++i) total *= 3;
            for (int code = 0; code < total; ++code) {
                std::vector<RatFunc> a;
                for (int i = 0, c = code; i < n; ++i, c /= 3) a.push_back(RatFunc(vals[c % 3]));
                ExprPtr g = make_G(a, RatFunc(1)), d = hoelder_dual(g);
                Alphabet A = expr_alphabet(g - d, make_ring({}));
                CHECK(symbol_of(g, A) == symbol_of(d, A));
                ++checked;
            }
        }
        CHECK(checked == 120);
        CHECK_THROWS_AS(hoelder_dual(make_G({RatFunc(1), RatFunc(2)}, RatFunc(1))), PreconditionViolated);
        CHECK_THROWS_AS(hoelder_dual(make_G({RatFunc(2), RatFunc(0)}, RatFunc(1))), PreconditionViolated);
    }

    TEST_CASE("colored multiple zeta values") {
        Alphabet A = Alphabet::from_strings({"2"}, make_ring({}));
        CMZVSpec z{{1, 1, 1, 1}, {-1, -1, 1, 1}};
        CHECK(cmzv_symbol(z, A) == symbol_of(parse_expr("ln2^4/24", A.ring()).expr, A));
        CHECK(cmzv_symbol(z, A) == symbol_of(parse_expr("-Li4half", A.ring()).expr, A));
        CHECK(z.weight() == 4);
        CHECK(z.convergent());
        CHECK_FALSE(CMZVSpec{{1, 2}, {1, 1}}.convergent());
        CHECK(CMZVSpec{{2, 1}, {1, 1}}.convergent());
        for (int w = 1; w <= 6; ++w)
            for (const auto& m : compositions(w)) {
                CMZVSpec mzv{m, std::vector<int>(m.size(), 1)};
                if (mzv.convergent()) CHECK(cmzv_symbol(mzv, A).is_zero());
            }
        CHECK(to_string(cmzv_to_g(CMZVSpec{{2}, {-1}})) == to_string(scaled(-1, make_G({RatFunc(0), RatFunc(-1)}, RatFunc(1)))));
    }

    TEST_CASE("expression alphabet") {
        auto p = parse_expr("G(-1,1;x) + Li2(2*x/(x+1))");
        Alphabet A = expr_alphabet(p.expr, p.ring);
        std::set<std::string> names;
        for (size_t i = 0; i < A.size(); ++i) names.insert(A.display_poly(int(i)).display());
        CHECK(names == std::set<std::string>{"2", "x", "1-x", "1+x"});
        CHECK_NOTHROW(symbol_of(p.expr, A));
    }
}
