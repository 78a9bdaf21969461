#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"

using namespace mplsym;
using testsupport::load_json;
using testsupport::table_term;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

std::vector<Word> all_words(int w, int letters) {
    std::vector<Word> out = {{}};
    for (int k = 0; k < w; ++k) {
        std::vector<Word> next;
        for (const auto& v : out)
            for (int l = 0; l < letters; ++l) {
                auto u = v;
                u.push_back(l);
                next.push_back(u);
            }
        out = std::move(next);
    }
    return out;
}

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

Integer binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    Integer c;
    mpz_bin_uiui(c.get_mpz_t(), n, k);
    return c;
}

Real max_difference(const ExprPtr& a, const ExprPtr& b) {
    Real m = 0;
    for (const Rational& x : {Rational(1, 4), Rational(1, 3), Rational(1, 2)}) {
        Real d = abs(eval_expr(a, {{"x", x}}) - eval_expr(b, {{"x", x}}));
        if (d > m) m = d;
    }
    return m;
}

std::map<std::vector<std::string>, Rational> collect(const ExprPtr& e) {
    std::map<std::vector<std::string>, Rational> out;
    for (const auto& m : expand(e)) {
        std::vector<std::string> key;
        for (const auto& f : m.factors) key.push_back(to_string(f));
        std::sort(key.begin(), key.end());
        out[key] += m.coeff;
        if (out[key] == 0) out.erase(key);
    }
    return out;
}

Outcome dissection_counts() {
    Outcome o;
    std::ostringstream d;
    const int expected[] = {3, 12, 55, 273};
    for (int m = 2; m <= 5; ++m) {
        size_t n = enumerate_maximal_dissections(m + 1).size();
        d << (m > 2 ? " " : "") << n;
        o.ok = o.ok && n == size_t(expected[m - 2]);
    }
    o.detail = "counts " + d.str() + " for weights 2..5";
    return o;
}

Outcome symbol_golden() {
    Outcome o;
    Alphabet H = Alphabet::hpl();
    RatFunc x = parse_ratfunc("x", H.ring());
    o.ok = polygon_symbol(polygon_of_G({RatFunc(-1), RatFunc(1)}, x), H) ==
           parse_symbol("[1+x | 2] + [1-x | 1+x] - [1-x | 2]", H);
    auto R = make_ring({"a", "b", "c", "d", "x"});
    std::map<char, RatFunc> dec;
    for (char ch : std::string("abcdx")) dec[ch] = parse_ratfunc(std::string(1, ch), R);
    int matched = 0, total = 0;
    for (const auto& t : load_json("symbol_tables.json")) {
        int w = t["weight"];
        std::vector<RatFunc> a;
        for (int i = 0; i < w; ++i) a.push_back(dec[char('a' + i)]);
        Polygon P = polygon_of_G(a, dec['x']);
        Alphabet A = generic_alphabet(P);
        std::vector<Symbol> ours;
        for (const auto& D : enumerate_maximal_dissections(P.sides())) ours.push_back(dissection_term(P, D, A));
        std::vector<char> used(ours.size(), 0);
        Symbol sum(w);
        for (const auto& term : t["terms"]) {
            Symbol s = table_term(term.get<std::string>(), dec, A);
            sum += s;
            ++total;
            for (size_t i = 0; i < ours.size(); ++i)
                if (!used[i] && ours[i] == s) {
                    used[i] = 1;
                    ++matched;
                    break;
                }
        }
        o.ok = o.ok && ours.size() == t["terms"].size() && sum == polygon_symbol(P, A);
    }
    o.ok = o.ok && matched == total && total == 3 + 12 + 55;
    o.detail = std::to_string(matched) + "/" + std::to_string(total) + " table terms matched";
    return o;
}

Outcome polygon_vs_recursive() {
    Outcome o;
    auto R = make_ring({"a", "b", "c", "d", "x"});
    std::vector<RatFunc> v;
    for (const char* s : {"a", "b", "c", "d"}) v.push_back(parse_ratfunc(s, R));
    RatFunc x = parse_ratfunc("x", R);
    for (int w = 1; w <= 4; ++w) {
        Polygon P = polygon_of_G(std::vector<RatFunc>(v.begin(), v.begin() + w), x);
        Alphabet A = generic_alphabet(P);
        o.ok = o.ok && polygon_symbol(P, A) == recursive_symbol(P, A);
    }
    o.detail = "weights 1..4";
    return o;
}

Outcome projector_suite() {
    Outcome o;
    long checks = 0;
    for (int w = 1; w <= 5; ++w) {
        auto parts = partitions_desc(w);
        for (const Word& word : all_words(w, 3)) {
            Symbol T = Symbol::word(word);
            Symbol P = project_pi(w, T);
            o.ok = o.ok && project_pi(w, P) == P;
            Symbol ree(w);
            for (int k = 0; k < w; ++k) {
                Symbol pre = Symbol::word(Word(word.begin(), word.begin() + k));
                Symbol suf = Symbol::word(Word(word.begin() + k, word.end()));
                ree += shuffle(pre, project_pi(w - k, suf) * Rational(w - k));
                if (k > 0) o.ok = o.ok && project_pi(w, shuffle(pre, suf)).is_zero();
            }
            o.ok = o.ok && ree == T * Rational(w);
            for (const auto& lam : parts) {
                Symbol sh = Symbol::unit();
                size_t pos = 0;
                for (int p : lam) {
                    sh = shuffle(sh, Symbol::word(Word(word.begin() + pos, word.begin() + pos + p)));
                    pos += p;
                }
                for (const auto& mu : parts)
                    if (mu != lam && lam.size() >= mu.size()) {
                        o.ok = o.ok && project_partition(mu, sh).is_zero();
                        ++checks;
                    }
            }
        }
    }
    o.detail = "words up to length 5 over 3 letters, " + std::to_string(checks) + " partition checks";
    return o;
}

Outcome integrability() {
    Outcome o;
    auto R = make_ring({"a", "b", "x"});
    std::vector<RatFunc> entries;
    for (const char* s : {"a", "b", "0", "1", "-1", "a+b"}) entries.push_back(parse_ratfunc(s, R));
    RatFunc x = parse_ratfunc("x", R);
    int symbols = 0, mutated = 0, eligible = 0;
    for (int w = 1; w <= 3; ++w) {
        int total = 1;
        for (int i = 0; i < w; ++i) total *= int(entries.size());
        for (int code = 0; code < total; ++code) {
            std::vector<RatFunc> a;
            for (int i = 0, c = code; i < w; ++i, c /= int(entries.size())) a.push_back(entries[c % entries.size()]);
            ExprPtr g = make_G(a, x);
            Alphabet A = expr_alphabet(g, R);
            Symbol S = symbol_of(g, A);
            ++symbols;
            o.ok = o.ok && integrability_check(S, A).integrable;
            if (w < 2 || S.is_zero()) continue;
            ++eligible;
            bool caught = false;
            for (const auto& [word, c] : S.terms()) {
                Symbol m = S;
                m.add(word, 1);
                if (!integrability_check(m, A).integrable) {
                    caught = true;
                    break;
                }
            }
            mutated += caught;
        }
    }
    Alphabet A = Alphabet::from_strings({"1-x", "1-a"}, R);
    o.ok = o.ok && !integrability_check(Symbol::word({0, 1}), A).integrable && mutated > 0;
    o.detail = std::to_string(symbols) + " G symbols integrable, " + std::to_string(mutated) + "/" +
               std::to_string(eligible) + " of weight >= 2 broken by a single +1 mutation";
    return o;
}

Outcome worked_example() {
    Outcome o;
    HplReducer R(40);
    HplReduction r = R.reduce({0, 0, 1, 1});
    const auto& L = r.integration.levels;
    auto ring = R.alphabet().ring();
    std::map<std::string, Rational> c4;
    for (const auto& [name, c] : L.at(0).coeffs) c4[hpl_basis_label(parse_expr(name, ring).expr)] = c;
    std::map<std::string, Rational> c31;
    for (const auto& [name, c] : L.at(1).coeffs) {
        auto terms = expand(parse_expr(name, ring).expr);
        std::string key;
        for (const auto& f : terms.at(0).factors) key += hpl_basis_label(f);
        c31[key] = c;
    }
    o.ok = c4 == std::map<std::string, Rational>{{"B4(1)", 1}, {"B4(3)", -1}, {"B4(5)", 1}} &&
           c31 == std::map<std::string, Rational>{{"B3(1)B1(2)", -1}} && L.at(2).coeffs.empty() &&
           L.at(3).coeffs.empty();
    ExprPtr paper = parse_expr("zeta3*log(1-x) + pi^2*log(1-x)^2/12 + pi^4/90", ring).expr;
    o.ok = o.ok && collect(r.fix.constants) == collect(paper);
    o.detail = "constants: " + to_string(r.fix.constants);
    return o;
}

Outcome hpl_regression() {
    Outcome o;
    HplReducer R(40);
    Precision P(40);
    int good = 0, total = 0;
    Real worst = 0;
    reset_truncation_order();
    for (int w = 1; w <= 4; ++w)
        for (const auto& a : hpl_indices(w)) {
            ++total;
            try {
                HplReduction r = R.reduce(a);
                Real d = max_difference(r.expression, hpl_expr(a));
                if (d > worst) worst = d;
                if (r.integration.residual.is_zero() && symbol_of(r.expression, R.alphabet()) == hpl_symbol(a) &&
                    d < Real("1e-25"))
                    ++good;
            } catch (const Error& e) {
                std::cerr << "hpl " << index_to_string(a) << ": " << e.what() << "\n";
            }
        }
    o.ok = good == 120 && total == 120;
    o.detail = std::to_string(good) + "/" + std::to_string(total) + " reduced, max deviation " + format_real(worst, 3) +
               ", truncation order " + std::to_string(truncation_order());
    return o;
}

Outcome table2() {
    Outcome o;
    auto R = Alphabet::hpl().ring();
    using Row = std::tuple<int, int, int, int, int>;
    const std::pair<Row, const char*> rows[] = {
        {{-1, 0, 0, 0, 0}, "-1"},           {{1, 0, 0, 0, -1}, "1/2"},         {{1, 1, 0, 0, 0}, "x"},
        {{-1, 1, 0, 0, 0}, "-x"},           {{1, 0, 1, 0, 0}, "1-x"},          {{1, 0, 0, -1, 0}, "1/(1+x)"},
        {{1, 2, 0, 0, 0}, "x^2"},           {{1, 0, 1, 1, 0}, "1-x^2"},        {{-1, 1, -1, 0, 0}, "x/(x-1)"},
        {{1, 1, 0, -1, 0}, "x/(x+1)"},      {{1, 0, 1, -1, 0}, "(1-x)/(1+x)"}, {{-1, 0, 1, -1, 0}, "(x-1)/(x+1)"},
        {{-1, 2, -1, -1, 0}, "x^2/(x^2-1)"}, {{1, 0, 2, -2, 0}, "(1-x)^2/(1+x)^2"},
        {{1, 0, 1, 0, -1}, "(1-x)/2"},      {{1, 0, 0, 1, -1}, "(1+x)/2"},     {{-1, 1, -1, 0, 1}, "2*x/(x-1)"},
        {{1, 1, 0, -1, 1}, "2*x/(x+1)"},    {{1, 1, 0, -2, 2}, "4*x/(1+x)^2"}, {{-1, 1, -2, 0, 2}, "-4*x/(x-1)^2"},
    };
    std::map<Row, RatFunc> expected;
    for (const auto& [k, v] : rows) {
        auto [s, a, b, g, d] = k;
        expected[k] = parse_ratfunc(v, R);
        expected[{s, -a, -b, -g, -d}] = parse_ratfunc(v, R).inverse();
    }
    std::map<Row, RatFunc> got;
    auto cands = table2_enumerate(4, 2);
    for (const auto& r : cands) got[{r.s, r.alpha, r.beta, r.gamma, r.delta}] = r.value;
    o.ok = got == expected && cands.size() == got.size();
    o.detail = std::to_string(cands.size()) + " solutions (20 rows with 3 corrected, plus inverses)";
    return o;
}

Outcome propositions() {
    Outcome o;
    Alphabet A = Alphabet::from_strings({"2"}, make_ring({}));
    int main_ok = 0, main_total = 0;
    for (int n = 1; n <= 8; ++n)
        for (int mask = 1; mask < (1 << n); ++mask) {
            std::vector<RatFunc> d;
            int last = 0;
            for (int i = 0; i < n; ++i) {
                bool neg = mask >> i & 1;
                d.push_back(RatFunc(neg ? -1 : 1));
                if (neg) last = i + 1;
            }
            int a = n - last;
            Symbol expect(n);
            expect.add(Word(n, 0), Rational((a % 2 ? -1 : 1) * binom(n - 1, a)));
            ++main_total;
            main_ok += polygon_symbol(Polygon{d, RatFunc(1)}, A) == expect;
        }
    int second_ok = 0, second_total = 0;
    for (int w = 1; w <= 6; ++w)
        for (const auto& m : compositions(w)) {
            if (std::none_of(m.begin(), m.end(), [](int v) { return v >= 2; })) continue;
            for (int mask = 0; mask < (1 << m.size()); ++mask) {
                std::vector<RatFunc> d;
                for (size_t i = 0; i < m.size(); ++i) {
                    for (int j = 1; j < m[i]; ++j) d.push_back(RatFunc(0));
                    d.push_back(RatFunc(mask >> i & 1 ? -1 : 1));
                }
                ++second_total;
                second_ok += polygon_symbol(Polygon{d, RatFunc(1)}, A).is_zero();
            }
        }
    bool binomial = true;
    for (int n = 0; n <= 20; ++n)
        for (int c = 0; c <= 20; ++c) {
            Integer s = 0;
            for (int i = 0; i <= n; ++i) s += (i % 2 ? -1 : 1) * binom(n - i + c, n - i) * binom(n + c + 1, i);
            binomial = binomial && s == (n % 2 ? -1 : 1);
        }
    o.ok = main_ok == main_total && second_ok == second_total && binomial;
    o.detail = "sign patterns " + std::to_string(main_ok) + "/" + std::to_string(main_total) + ", zero-symbol specs " +
               std::to_string(second_ok) + "/" + std::to_string(second_total) + ", binomial identity " +
               (binomial ? "holds" : "fails");
    return o;
}

Outcome kernel_facts() {
    Outcome o;
    Alphabet A = Alphabet::from_strings({"2"}, make_ring({}));
    o.ok = symbol_of(parse_expr("Li4half + ln2^4/24", A.ring()).expr, A).is_zero();
    int n = 0;
    for (int w = 1; w <= 6; ++w)
        for (const auto& m : compositions(w)) {
            CMZVSpec z{m, std::vector<int>(m.size(), 1)};
            if (!z.convergent()) continue;
            ++n;
            o.ok = o.ok && cmzv_symbol(z, A).is_zero();
        }
    o.detail = std::to_string(n) + " convergent MZVs of weight <= 6";
    return o;
}

Outcome hoelder() {
    Outcome o;
    std::vector<Rational> vals = {Rational(-1), Rational(2), Rational(1, 2)};
    int sym = 0;
    for (int n = 1; n <= 4; ++n) {
        int total = 1;
        for (int i = 0; i < n; ++i) total *= 3;
        for (int code = 0; code < total; ++code) {
            std::vector<RatFunc> a;
            for (int i = 0, c = code; i < n; ++i, c /= 3) a.push_back(RatFunc(vals[c % 3]));
            ExprPtr g = make_G(a, RatFunc(1)), d = hoelder_dual(g);
            Alphabet A = expr_alphabet(g - d, make_ring({}));
            o.ok = o.ok && symbol_of(g, A) == symbol_of(d, A);
            ++sym;
        }
    }
    Precision P(40);
    std::vector<Rational> nv = {Rational(-1), Rational(2), Rational(-2), Rational(3)};
    Rational half(1, 2);
    Real worst = 0;
    int num = 0;
    for (int n = 1; n <= 3; ++n) {
        int total = 1;
        for (int i = 0; i < n; ++i) total *= 4;
        for (int code = 0; code < total; ++code) {
            std::vector<Rational> a;
            for (int i = 0, c = code; i < n; ++i, c /= 4) a.push_back(nv[c % 4]);
            Real rhs = 0;
            for (int k = 0; k <= n; ++k) {
                std::vector<Rational> left, right(a.begin() + k, a.end());
                for (int i = k - 1; i >= 0; --i) left.push_back(1 - a[i]);
                rhs += (k % 2 ? -1 : 1) * g_numeric(left, half) * g_numeric(right, half);
            }
            Real d = abs(g_numeric(a, 1) - rhs);
            if (d > worst) worst = d;
            ++num;
        }
    }
    o.ok = o.ok && worst < Real("1e-35");
    o.detail = std::to_string(sym) + " symbol identities, " + std::to_string(num) + " numeric at p = 2, max deviation " +
               format_real(worst, 3);
    return o;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"dissection counts", dissection_counts},
        {"symbol golden tables", symbol_golden},
        {"polygon and recursive symbols agree", polygon_vs_recursive},
        {"projector suite", projector_suite},
        {"integrability", integrability},
        {"worked weight-4 reduction", worked_example},
        {"full HPL regression", hpl_regression},
        {"table of arguments", table2},
        {"polygon propositions", propositions},
        {"kernel facts", kernel_facts},
        {"Hoelder convolution", hoelder},
    };
    int failures = 0, idx = 0;
    for (const auto& [name, run] : criteria) {
        ++idx;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failures += !o.ok;
        std::ostringstream t;
        t.precision(2);
        t << std::fixed << secs;
        std::cout << (o.ok ? "PASS" : "FAIL") << " [" << idx << "] " << name << ": " << o.detail << " (" << t.str()
                  << " s)" << std::endl;
    }
    return failures ? 1 : 0;
}
