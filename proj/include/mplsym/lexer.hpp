#pragma once

#include <string>
#include <vector>

#include "mplsym/errors.hpp"

namespace mplsym {

enum class Tok { Number, Ident, Punct, End };

struct Token {
    Tok kind;
    std::string text;
    size_t pos;
};

// Splits input into integers, identifiers and single-character punctuation.
class Lexer {
public:
    explicit Lexer(const std::string& text);

    const Token& peek(size_t ahead = 0) const;
    Token next();
    bool accept(const std::string& punct);
    void expect(const std::string& punct);
    bool at_end() const { return peek().kind == Tok::End; }
    [[noreturn]] void fail(const std::string& what) const;

private:
    std::string text_;
    std::vector<Token> toks_;
    size_t i_ = 0;
};

}  // namespace mplsym
