#include "doctest.h"
#include "support.hpp"

using namespace mplsym;
using testsupport::close;
using testsupport::load_json;

namespace {

Real real_of(const nlohmann::json& v) { return Real(v.get<std::string>()); }
Rational rat_of(const nlohmann::json& v) { return parse_rational(v.get<std::string>()); }

std::vector<Rational> rats(const nlohmann::json& a) {
    std::vector<Rational> out;
    for (const auto& v : a) out.push_back(rat_of(v));
    return out;
}

Real eval_text(const std::string& text, const Rational& x = 0) {
    return eval_expr(parse_expr(text).expr, {{"x", x}});
}

}  // namespace

TEST_SUITE("numeric") {
    TEST_CASE("constants and zeta values") {
        Precision P(40);
        auto j = load_json("numeric_oracles.json");
        CHECK(close(constant_value(Constant::Pi), real_of(j["constants"]["pi"]), 40));
        CHECK(close(constant_value(Constant::Zeta3), real_of(j["constants"]["zeta3"]), 40));
        CHECK(close(constant_value(Constant::Ln2), real_of(j["constants"]["ln2"]), 40));
        CHECK(close(constant_value(Constant::Li4Half), real_of(j["constants"]["Li4half"]), 40));
        for (const auto& [n, v] : j["zeta"].items()) CHECK_MESSAGE(close(zeta_value(std::stoi(n)), real_of(v), 40), n);
        CHECK(bernoulli(2) == Rational(1, 6));
        CHECK(bernoulli(4) == Rational(-1, 30));
        CHECK(bernoulli(12) == Rational(-691, 2730));
        CHECK(bernoulli(7) == 0);
    }

    TEST_CASE("classical polylogarithms") {
        Precision P(40);
        for (const auto& c : load_json("numeric_oracles.json")["polylog"]) {
            int n = c["n"];
            Rational z = rat_of(c["z"]);
            CHECK_MESSAGE(close(polylog(n, z), real_of(c["value"]), 38), "Li", n, "(", to_string(z), ")");
        }
        CHECK(close(eval_text("Li2(1/2) - pi^2/12 + ln2^2/2"), Real(0), 38));
        CHECK(close(eval_text("Li4(1/2)"), constant_value(Constant::Li4Half), 38));
    }

    TEST_CASE("multiple polylogarithms by nested sums") {
        Precision P(40);
        for (const auto& c : load_json("numeric_oracles.json")["li_multi"]) {
            std::vector<int> m = c["m"];
            CHECK(close(li_numeric(m, rats(c["x"])), real_of(c["value"]), 38));
        }
    }

    TEST_CASE("iterated integrals against quadrature") {
        Precision P(40);
        auto j = load_json("numeric_oracles.json");
        for (const auto& c : j["g_quad"]) CHECK(close(g_numeric(rats(c["a"]), rat_of(c["x"])), real_of(c["value"]), 25));
        for (const auto& c : j["hpl_quad"]) {
            std::vector<int> a = c["a"];
            CHECK(close(eval_expr(hpl_expr(a), {{"x", rat_of(c["x"])}}), real_of(c["value"]), 25));
        }
        CHECK_THROWS_AS(g_numeric({Rational(1)}, Rational(1)), DivergentSpec);
        CHECK_THROWS_AS(g_numeric({Rational(1, 2)}, Rational(1)), Error);
        CHECK(g_numeric({Rational(2)}, Rational(0)) == 0);
    }

    TEST_CASE("numeric shuffle identity") {
        Precision P(40);
        Real lhs = eval_text("G(-1;x)*G(2;x)", Rational(1, 3));
        Real rhs = eval_text("G(-1,2;x) + G(2,-1;x)", Rational(1, 3));
        CHECK(close(lhs, rhs, 38));
        CHECK(close(eval_text("H(0,1;x) - Li2(x)", Rational(1, 3)), Real(0), 38));
        CHECK(close(eval_text("G(-1,1,1,1;1) + Li4half"), Real(0), 35));
    }

    TEST_CASE("Hoelder convolution at p = 2") {
        Precision P(40);
        std::vector<Rational> vals = {Rational(-1), Rational(2), Rational(-2), Rational(3)};
        Rational half(1, 2);
        for (int n = 1; n <= 3; ++n) {
            int total = 1;
            for (int i = 0; i < n; ++i) total *= 4;
            for (int code = 0; code < total; ++code) {
                std::vector<Rational> a;
                for (int i = 0, c = code; i < n; ++i, c /= 4) a.push_back(vals[c % 4]);
                Real rhs = 0;
                for (int k = 0; k <= n; ++k) {
                    std::vector<Rational> left, right(a.begin() + k, a.end());
                    for (int i = k - 1; i >= 0; --i) left.push_back(1 - a[i]);
                    rhs += (k % 2 ? -1 : 1) * g_numeric(left, half) * g_numeric(right, half);
                }
                CHECK(abs(g_numeric(a, 1) - rhs) < Real("1e-35"));
                CHECK(abs(g_hoelder(a, half) - rhs) < Real("1e-35"));
            }
        }
    }

    TEST_CASE("rational reconstruction and relations") {
        Precision P(40);
        for (const auto& c : load_json("numeric_oracles.json")["reconstruct"]) {
            auto r = rational_reconstruct(real_of(c["value"]), Integer(c["maxden"].get<long>()), 40);
            if (c["expect"].is_null())
                CHECK_FALSE(r);
            else {
                REQUIRE(r);
                CHECK(*r == rat_of(c["expect"]));
            }
        }
        Real pi = constant_value(Constant::Pi), z3 = constant_value(Constant::Zeta3), l2 = constant_value(Constant::Ln2);
        Real t = Real(3) / 7 * pow(pi, 4) - Real(5) / 12 * z3 * l2 + Real(1) / 90 * pow(l2, 4);
        auto rel = integer_relation({t, pow(pi, 4), z3 * l2, pow(l2, 4), pi * pi * l2 * l2}, 40, Integer(1000000));
        REQUIRE(rel);
        const auto& m = *rel;
        CHECK(m[1] * 7 == -3 * m[0]);
        CHECK(m[2] * 12 == 5 * m[0]);
        CHECK(m[3] * 90 == -m[0]);
        CHECK(m[4] == 0);
        CHECK_FALSE(integer_relation({pi, z3}, 40, Integer(1000)));
    }

    TEST_CASE("formatting and precision") {
        {
            Precision P(40);
            CHECK(format_real(to_real(Rational(1, 3)), 10) == "0.3333333333");
        }
        Precision outer(60);
        unsigned before = Real::default_precision();
        {
            Precision inner(30);
            CHECK(Real::default_precision() < before);
        }
        CHECK(Real::default_precision() == before);
        CHECK(close(eval_text("pi^2/6") - zeta_value(2), Real(0), 55));
    }
}
