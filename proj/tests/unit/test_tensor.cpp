#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace mplsym;

namespace {

Symbol random_symbol(std::mt19937& rng, int weight, int letters, int terms) {
    Symbol s(weight);
    std::uniform_int_distribution<int> L(0, letters - 1), C(-3, 3);
    for (int t = 0; t < terms; ++t) {
        Word w(weight);
        for (int& l : w) l = L(rng);
        s.add(w, C(rng));
    }
    return s;
}

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

std::vector<Partition> all_partitions(int w) { return partitions_desc(w); }

// Shuffle of consecutive blocks of w with sizes given by lambda.
Symbol block_shuffle(const Word& w, const Partition& lambda) {
    Symbol s = Symbol::unit();
    size_t pos = 0;
    for (int part : lambda) {
        s = shuffle(s, Symbol::word(Word(w.begin() + pos, w.begin() + pos + part)));
        pos += part;
    }
    return s;
}

}  // namespace

TEST_SUITE("tensor") {
    TEST_CASE("shuffle basics") {
        Symbol a = Symbol::letter(0), b = Symbol::letter(1);
        CHECK(shuffle(a, Symbol::unit()) == a);
        CHECK(shuffle(a, b) == Symbol::word({0, 1}) + Symbol::word({1, 0}));
        Symbol s = shuffle(Symbol::word({0, 1}), Symbol::word({2, 3}));
        CHECK(s.terms().size() == 6);
        for (const auto& [w, c] : s.terms()) CHECK(c == 1);
        CHECK(shuffle(a, a) == Symbol::word({0, 0}, 2));
        CHECK_THROWS_AS(Symbol::letter(0) + Symbol::word({0, 1}), WeightMismatch);
    }

    TEST_CASE("shuffle is commutative and associative") {
        std::mt19937 rng(7);
        for (int t = 0; t < 20; ++t) {
            Symbol x = random_symbol(rng, 1 + t % 3, 3, 3), y = random_symbol(rng, 1 + t % 2, 3, 3),
                   z = random_symbol(rng, 1, 3, 2);
            CHECK(shuffle(x, y) == shuffle(y, x));
            CHECK(shuffle(shuffle(x, y), z) == shuffle(x, shuffle(y, z)));
        }
    }

    TEST_CASE("expand factor") {
        auto R = make_ring({"x"});
        Alphabet A = Alphabet::from_strings({"2", "3", "x"}, R);
        CHECK(expand_factor(RatFunc(-1), A).is_zero());
        Symbol s = expand_factor(parse_ratfunc("2^3*3^2/x^5", R), A);
        CHECK(s == Symbol::letter(A.find(MPoly(2).lifted(R)), 3) + Symbol::letter(A.find(MPoly(3).lifted(R)), 2) +
                       Symbol::letter(A.find(parse_ratfunc("x", R).num()), -5));
        CHECK(expand_factor(parse_ratfunc("x^2", R), A) == Symbol::letter(A.find(parse_ratfunc("x", R).num()), 2));
        CHECK(expand_factor(parse_ratfunc("-x", R), A) == expand_factor(parse_ratfunc("x", R), A));
        CHECK_THROWS_AS(expand_factor(parse_ratfunc("1+x", R), A), NotFactorable);
    }

    TEST_CASE("parse symbol round trip") {
        Alphabet A = Alphabet::hpl();
        std::mt19937 rng(3);
        for (int t = 0; t < 10; ++t) {
            Symbol s = random_symbol(rng, 1 + t % 4, int(A.size()), 4) * Rational(1, 1 + t);
            CHECK(parse_symbol(s.to_string(A), A) == s);
        }
        Symbol x = parse_symbol("[4*x | 1-x^2]", A);
        Symbol e = parse_symbol("2 [2 | 1-x] + 2 [2 | 1+x] + [x | 1-x] + [x | 1+x]", A);
        CHECK(x == e);
        CHECK(parse_symbol("0", A).is_zero());
        CHECK_THROWS_AS(parse_symbol("[3-x]", A), NotFactorable);
        Alphabet B = A;
        CHECK(parse_symbol("[3-x | x]", B, true).weight() == 2);
    }

    TEST_CASE("weight-2 projector") {
        Symbol ab = Symbol::word({0, 1});
        CHECK(project_pi(2, ab) == (Symbol::word({0, 1}) - Symbol::word({1, 0})) * Rational(1, 2));
        CHECK(project_pi(2, shuffle(Symbol::letter(0), Symbol::letter(1))).is_zero());
        CHECK(project_pi(1, Symbol::letter(2)) == Symbol::letter(2));
    }

    TEST_CASE("projector annihilates shuffles and is idempotent") {
        for (int w = 2; w <= 5; ++w) {
            for (const Word& word : all_words(w, 3)) {
                Symbol T = Symbol::word(word);
                Symbol P = project_pi(w, T);
                CHECK(project_pi(w, P) == P);
                for (int k = 1; k < w; ++k) {
                    Symbol sh = shuffle(Symbol::word(Word(word.begin(), word.begin() + k)),
                                        Symbol::word(Word(word.begin() + k, word.end())));
                    CHECK(project_pi(w, sh).is_zero());
                }
                Symbol ree(w);
                for (int k = 0; k < w; ++k) {
                    Symbol prefix = Symbol::word(Word(word.begin(), word.begin() + k));
                    Symbol suffix = Symbol::word(Word(word.begin() + k, word.end()));
                    ree += shuffle(prefix, project_pi(w - k, suffix) * Rational(w - k));
                }
                CHECK(ree == T * Rational(w));
            }
        }
    }

    TEST_CASE("partitions") {
        auto p5 = partitions_desc(5);
        std::vector<Partition> chain = {{5}, {4, 1}, {3, 2}, {3, 1, 1}, {2, 2, 1}, {2, 1, 1, 1}, {1, 1, 1, 1, 1}};
        CHECK(p5 == chain);
        CHECK(partitions_desc(1) == std::vector<Partition>{{1}});
        CHECK(partitions_desc(4) == std::vector<Partition>{{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}});
        CHECK(partition_to_string({3, 1}) == "(3,1)");
    }

    TEST_CASE("partition projectors") {
        for (int w = 2; w <= 5; ++w) {
            auto parts = all_partitions(w);
            for (const Word& word : all_words(w, 3))
                for (const auto& lam : parts) {
                    Symbol sh = block_shuffle(word, lam);
                    for (const auto& mu : parts)
                        if (mu != lam && lam.size() >= mu.size())
                            CHECK(project_partition(mu, sh).is_zero());
                }
            Symbol T = Symbol::word(all_words(w, 3)[5]);
            CHECK(project_partition(Partition(w, 1), T) == T);
        }
        Symbol s22 = shuffle(Symbol::word({0, 1}), Symbol::word({2, 0}));
        CHECK(project_partition({3, 1}, s22).is_zero());
    }

    TEST_CASE("integrability") {
        auto R = make_ring({"a", "b", "x"});
        RatFunc a = parse_ratfunc("a", R), b = parse_ratfunc("b", R), x = parse_ratfunc("x", R);
        Polygon P = polygon_of_G({a, b}, x);
        Alphabet A = generic_alphabet(P);
        Symbol S = polygon_symbol(P, A);
        auto rep = integrability_check(S, A);
        CHECK(rep.integrable);
        CHECK_FALSE(rep.single_variable);

        Alphabet B = Alphabet::from_strings({"1-x", "1-a"}, R);
        auto bad = integrability_check(Symbol::word({0, 1}), B);
        CHECK_FALSE(bad.integrable);
        CHECK_FALSE(bad.witness.empty());

        CHECK(integrability_check(Symbol::letter(0), A).integrable);

        Alphabet H = Alphabet::hpl();
        auto one = integrability_check(hpl_symbol({1, 0, -1}), H);
        CHECK(one.integrable);
        CHECK(one.single_variable);
    }
}
