#include "mplsym/lexer.hpp"

#include <algorithm>
#include <cctype>

namespace mplsym {

Lexer::Lexer(const std::string& text) : text_(text) {
    size_t i = 0;
    while (i < text.size()) {
        unsigned char c = text[i];
        if (std::isspace(c)) {
            ++i;
        } else if (std::isdigit(c)) {
            size_t j = i;
            while (j < text.size() && std::isdigit((unsigned char)text[j])) ++j;
            toks_.push_back({Tok::Number, text.substr(i, j - i), i});
            i = j;
        } else if (std::isalpha(c) || c == '_') {
            size_t j = i;
            while (j < text.size() &&
                   (std::isalnum((unsigned char)text[j]) || text[j] == '_'))
                ++j;
            toks_.push_back({Tok::Ident, text.substr(i, j - i), i});
            i = j;
        } else if (std::string("+-*/^(),;[]").find(c) != std::string::npos) {
            toks_.push_back({Tok::Punct, std::string(1, c), i});
            ++i;
        } else {
            throw ParseError("unexpected character '" + std::string(1, c) +
                             "' at " + std::to_string(i) + " in \"" + text + "\"");
        }
    }
    toks_.push_back({Tok::End, "", text.size()});
}

const Token& Lexer::peek(size_t ahead) const {
    size_t k = std::min(i_ + ahead, toks_.size() - 1);
    return toks_[k];
}

Token Lexer::next() {
    Token t = peek();
    if (i_ < toks_.size() - 1) ++i_;
    return t;
}

bool Lexer::accept(const std::string& punct) {
    if (peek().kind == Tok::Punct && peek().text == punct) {
        next();
        return true;
    }
    return false;
}

void Lexer::expect(const std::string& punct) {
    if (!accept(punct)) fail("expected '" + punct + "'");
}

void Lexer::fail(const std::string& what) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(what + ", got " + got + " at " + std::to_string(t.pos) +
                     " in \"" + text_ + "\"");
}

}  // namespace mplsym
