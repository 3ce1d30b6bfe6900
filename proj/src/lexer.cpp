#include "srgen/lexer.hpp"

#include <cctype>
#include <charconv>
#include <limits>

namespace srgen {

namespace {

struct Scanner {
    const std::string& src;
    size_t i = 0;
    int line = 1;
    int col = 1;

    explicit Scanner(const std::string& s) : src(s) {}

    bool done() const { return i >= src.size(); }
    char peek() const { return src[i]; }
    char peek2() const { return i + 1 < src.size() ? src[i + 1] : '\0'; }

    char advance() {
        char c = src[i++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }

    SourcePos pos() const { return {line, col}; }
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

}  // namespace

std::vector<Token> lex(const std::string& source) {
    Scanner s(source);
    std::vector<Token> out;

    auto push = [&](Tok t, SourcePos p) {
        Token tok;
        tok.tok = t;
        tok.pos = p;
        out.push_back(std::move(tok));
    };

    while (!s.done()) {
        char c = s.peek();
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            s.advance();
            continue;
        }
        if (c == '/' && s.peek2() == '/') {
            while (!s.done() && s.peek() != '\n') s.advance();
            continue;
        }
        SourcePos p = s.pos();
        if (ident_start(c)) {
            std::string word;
            while (!s.done() && ident_char(s.peek())) word += s.advance();
            if (word == "inf" || word == "nan") {
                Token t;
                t.tok = Tok::Float;
                t.float_val = word == "inf" ? std::numeric_limits<double>::infinity()
                                            : std::numeric_limits<double>::quiet_NaN();
                t.text = word;
                t.pos = p;
                out.push_back(std::move(t));
            } else {
                Token t;
                t.tok = Tok::Ident;
                t.text = std::move(word);
                t.pos = p;
                out.push_back(std::move(t));
            }
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (!s.done() && std::isdigit(static_cast<unsigned char>(s.peek()))) num += s.advance();
            bool is_float = false;
            if (!s.done() && s.peek() == '.' && std::isdigit(static_cast<unsigned char>(s.peek2()))) {
                is_float = true;
                num += s.advance();
                while (!s.done() && std::isdigit(static_cast<unsigned char>(s.peek()))) num += s.advance();
            }
            if (!s.done() && (s.peek() == 'e' || s.peek() == 'E')) {
                size_t save_i = s.i;
                std::string exp;
                exp += s.advance();
                if (!s.done() && (s.peek() == '+' || s.peek() == '-')) exp += s.advance();
                if (!s.done() && std::isdigit(static_cast<unsigned char>(s.peek()))) {
                    while (!s.done() && std::isdigit(static_cast<unsigned char>(s.peek()))) exp += s.advance();
                    num += exp;
                    is_float = true;
                } else {
                    // not an exponent; cannot rewind cleanly, so reject
                    (void)save_i;
                    throw ParseError{"malformed numeric literal", p};
                }
            }
            Token t;
            t.pos = p;
            t.text = num;
            if (is_float) {
                t.tok = Tok::Float;
                t.float_val = std::strtod(num.c_str(), nullptr);
            } else {
                t.tok = Tok::Int;
                int64_t v = 0;
                auto res = std::from_chars(num.data(), num.data() + num.size(), v);
                if (res.ec != std::errc{}) throw ParseError{"integer literal out of range", p};
                t.int_val = v;
            }
            out.push_back(std::move(t));
            continue;
        }
        if (c == '"') {
            s.advance();
            std::string text;
            while (true) {
                if (s.done()) throw ParseError{"unterminated string literal", p};
                char d = s.advance();
                if (d == '"') break;
                if (d == '\n') throw ParseError{"newline in string literal", p};
                if (d == '\\') {
                    if (s.done()) throw ParseError{"unterminated string literal", p};
                    char e = s.advance();
                    switch (e) {
                        case '"': text += '"'; break;
                        case '\\': text += '\\'; break;
                        case 'n': text += '\n'; break;
                        case 't': text += '\t'; break;
                        default: throw ParseError{std::string("unknown escape '\\") + e + "'", p};
                    }
                } else {
                    text += d;
                }
            }
            Token t;
            t.tok = Tok::String;
            t.text = std::move(text);
            t.pos = p;
            out.push_back(std::move(t));
            continue;
        }
        s.advance();
        switch (c) {
            case '{': push(Tok::LBrace, p); break;
            case '}': push(Tok::RBrace, p); break;
            case '(': push(Tok::LParen, p); break;
            case ')': push(Tok::RParen, p); break;
            case ';': push(Tok::Semi, p); break;
            case ':': push(Tok::Colon, p); break;
            case ',': push(Tok::Comma, p); break;
            case '.': push(Tok::Dot, p); break;
            case '+': push(Tok::Plus, p); break;
            case '-': push(Tok::Minus, p); break;
            case '*': push(Tok::Star, p); break;
            case '/': push(Tok::Slash, p); break;
            case '%': push(Tok::Percent, p); break;
            case '=':
                if (!s.done() && s.peek() == '=') {
                    s.advance();
                    push(Tok::EqEq, p);
                } else {
                    push(Tok::Assign, p);
                }
                break;
            case '!':
                if (!s.done() && s.peek() == '=') {
                    s.advance();
                    push(Tok::Ne, p);
                } else {
                    push(Tok::Bang, p);
                }
                break;
            case '<':
                if (!s.done() && s.peek() == '=') {
                    s.advance();
                    push(Tok::Le, p);
                } else {
                    push(Tok::Lt, p);
                }
                break;
            case '>':
                if (!s.done() && s.peek() == '=') {
                    s.advance();
                    push(Tok::Ge, p);
                } else {
                    push(Tok::Gt, p);
                }
                break;
            case '&':
                if (!s.done() && s.peek() == '&') {
                    s.advance();
                    push(Tok::AndAnd, p);
                } else {
                    throw ParseError{"expected '&&'", p};
                }
                break;
            case '|':
                if (!s.done() && s.peek() == '|') {
                    s.advance();
                    push(Tok::OrOr, p);
                } else {
                    throw ParseError{"expected '||'", p};
                }
                break;
            default:
                throw ParseError{std::string("unexpected character '") + c + "'", p};
        }
    }
    Token end;
    end.tok = Tok::End;
    end.pos = s.pos();
    out.push_back(std::move(end));
    return out;
}

}  // namespace srgen
