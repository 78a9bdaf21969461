#pragma once

#include <map>
#include <string>
#include <vector>

#include "mplsym/alphabet.hpp"

namespace mplsym {

using Word = std::vector<int>;
using Partition = std::vector<int>;

// Q-linear combination of words of one fixed length over letter indices.
class Symbol {
public:
    using TermMap = std::map<Word, Rational>;

    explicit Symbol(int weight = 0) : weight_(weight) {}
    static Symbol unit();
    static Symbol letter(int i, const Rational& c = 1);
    static Symbol word(const Word& w, const Rational& c = 1);

    int weight() const { return weight_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(const Word& w) const;

    void add(const Word& w, const Rational& c);
    Symbol& operator+=(const Symbol& o);
    Symbol& operator-=(const Symbol& o);
    Symbol& operator*=(const Rational& c);
    friend Symbol operator+(Symbol a, const Symbol& b) { return a += b; }
    friend Symbol operator-(Symbol a, const Symbol& b) { return a -= b; }
    friend Symbol operator*(Symbol a, const Rational& c) { return a *= c; }
    friend Symbol operator*(const Rational& c, Symbol a) { return a *= c; }
    Symbol operator-() const { return *this * Rational(-1); }
    friend bool operator==(const Symbol& a, const Symbol& b);
    friend bool operator!=(const Symbol& a, const Symbol& b) { return !(a == b); }

    // Tensor product: concatenation of words.
    Symbol tensor(const Symbol& o) const;
    // Relabels letter indices through `map`.
    Symbol relabel(const std::vector<int>& map) const;

    std::string to_string(const Alphabet& A) const;

private:
    void check_weight(const Symbol& o) const;

    int weight_;
    TermMap terms_;
};

Symbol shuffle(const Symbol& a, const Symbol& b);
std::vector<Word> shuffle_words(const Word& a, const Word& b);

Symbol expand_factor(const RatFunc& f, const Alphabet& A);

// Parses the Symbol::to_string format, e.g. "[1+x | 2] - 1/2 [x | x]".
// Entries are rational functions expanded multiplicatively; with `extend`
// their factors are first added to A.
Symbol parse_symbol(const std::string& text, Alphabet& A, bool extend = false);

Symbol project_pi(int w, const Symbol& S);
Symbol project_partition(const Partition& lambda, const Symbol& S);
std::vector<Partition> partitions_desc(int w);
std::string partition_to_string(const Partition& p);

struct IntegrabilityReport {
    bool integrable = true;
    bool single_variable = false;
    std::string witness;
};

IntegrabilityReport integrability_check(const Symbol& S, const Alphabet& A);

}  // namespace mplsym
