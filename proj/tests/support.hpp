#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <string>

#include "json.hpp"
#include "mplsym/hpl.hpp"

namespace testsupport {

using namespace mplsym;

inline std::string data_path(const std::string& name) { return std::string(MPLSYM_TEST_DATA) + "/" + name; }

inline nlohmann::json load_json(const std::string& name) {
    std::ifstream f(data_path(name));
    return nlohmann::json::parse(f);
}

// Reads the dissection-table notation "+ax|ba", "-bx|ab sha (db|cb)" where
// "pq" is the bigon with non-root side p and root side q, '|' is the tensor
// product and "sha" the shuffle product.
class TableTerm {
public:
    TableTerm(const std::string& text, const std::map<char, RatFunc>& dec, const Alphabet& A)
        : t_(text), dec_(dec), A_(A) {}

    Symbol parse() {
        skip();
        Rational sign = 1;
        if (t_[i_] == '+' || t_[i_] == '-') sign = t_[i_++] == '-' ? -1 : 1;
        Symbol s = seq();
        skip();
        if (i_ != t_.size()) throw ParseError("trailing text in '" + t_ + "'");
        return s * sign;
    }

private:
    void skip() {
        while (i_ < t_.size() && t_[i_] == ' ') ++i_;
    }
    Symbol seq() {
        Symbol s = shuf();
        skip();
        while (i_ < t_.size() && t_[i_] == '|') {
            ++i_;
            s = s.tensor(shuf());
            skip();
        }
        return s;
    }
    Symbol shuf() {
        Symbol s = unit();
        skip();
        while (t_.compare(i_, 3, "sha") == 0) {
            i_ += 3;
            s = shuffle(s, unit());
            skip();
        }
        return s;
    }
    Symbol unit() {
        skip();
        if (t_[i_] == '(') {
            ++i_;
            Symbol s = seq();
            skip();
            if (t_[i_++] != ')') throw ParseError("missing ')' in '" + t_ + "'");
            return s;
        }
        char p = t_[i_], q = t_[i_ + 1];
        i_ += 2;
        return expand_factor(mu(dec_.at(p), dec_.at(q)), A_);
    }

    std::string t_;
    size_t i_ = 0;
    const std::map<char, RatFunc>& dec_;
    const Alphabet& A_;
};

inline Symbol table_term(const std::string& text, const std::map<char, RatFunc>& dec, const Alphabet& A) {
    return TableTerm(text, dec, A).parse();
}

inline bool close(const Real& a, const Real& b, int digits) {
    return abs(a - b) <= pow(Real(10), -digits) * (1 + abs(b));
}

}  // namespace testsupport
