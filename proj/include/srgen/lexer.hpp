// lexer.hpp - token scanner shared by the subject and test-suite parsers
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srgen/ast.hpp"

namespace srgen {

enum class Tok {
    Ident, Int, Float, String,
    // punctuation / operators
    LBrace, RBrace, LParen, RParen, Semi, Colon, Comma, Dot,
    Assign, Plus, Minus, Star, Slash, Percent,
    Lt, Le, Gt, Ge, EqEq, Ne, AndAnd, OrOr, Bang,
    End,
};

struct Token {
    Tok tok;
    std::string text;   // identifier / literal spelling (strings unescaped)
    int64_t int_val = 0;
    double float_val = 0.0;
    SourcePos pos;
};

// Thrown for malformed input at both token and grammar level.
struct ParseError {
    std::string message;
    SourcePos pos;
};

// Scans the whole input; comments run from "//" to end of line.
std::vector<Token> lex(const std::string& source);

}  // namespace srgen
