#include "srgen/parser.hpp"

#include <map>
#include <set>
#include <sstream>

namespace srgen {

namespace {

const std::set<std::string> kReserved = {
    "unit", "field", "public", "constructor", "method", "var", "if", "else",
    "while", "return", "throw", "true", "false", "int", "float", "bool",
    "string", "this", "new", "test", "suite", "assert", "tol", "throws",
    "completes", "fallback",
};

class Parser {
public:
    explicit Parser(const std::string& source) : toks_(lex(source)) {}

    SubjectUnit parse() {
        expect_keyword("unit");
        SubjectUnit u;
        u.name = expect_ident("unit name");
        if (kReserved.count(u.name)) fail("'" + u.name + "' is a reserved word");
        expect(Tok::LBrace, "'{'");
        while (at_keyword("public") || at_keyword("field")) u.fields.push_back(parse_field());
        if (!at_keyword("constructor")) fail_expected("'constructor'");
        u.constructors.push_back(parse_callable(true));
        while (at_keyword("method")) u.methods.push_back(parse_callable(false));
        expect(Tok::RBrace, "'}'");
        expect(Tok::End, "end of input");
        return u;
    }

private:
    std::vector<Token> toks_;
    size_t i_ = 0;
    std::string unit_name_;

    const Token& cur() const { return toks_[i_]; }
    const Token& next() { return toks_[i_++]; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError{msg, cur().pos}; }
    [[noreturn]] void fail_expected(const std::string& what) const {
        std::string got = cur().tok == Tok::End ? "end of input"
                          : cur().tok == Tok::Ident ? "'" + cur().text + "'"
                                                    : "'" + token_spelling(cur()) + "'";
        fail("expected " + what + ", found " + got);
    }

    static std::string token_spelling(const Token& t) {
        switch (t.tok) {
            case Tok::Ident: case Tok::String: return t.text;
            case Tok::Int: return std::to_string(t.int_val);
            case Tok::Float: return t.text;
            case Tok::LBrace: return "{";
            case Tok::RBrace: return "}";
            case Tok::LParen: return "(";
            case Tok::RParen: return ")";
            case Tok::Semi: return ";";
            case Tok::Colon: return ":";
            case Tok::Comma: return ",";
            case Tok::Dot: return ".";
            case Tok::Assign: return "=";
            case Tok::Plus: return "+";
            case Tok::Minus: return "-";
            case Tok::Star: return "*";
            case Tok::Slash: return "/";
            case Tok::Percent: return "%";
            case Tok::Lt: return "<";
            case Tok::Le: return "<=";
            case Tok::Gt: return ">";
            case Tok::Ge: return ">=";
            case Tok::EqEq: return "==";
            case Tok::Ne: return "!=";
            case Tok::AndAnd: return "&&";
            case Tok::OrOr: return "||";
            case Tok::Bang: return "!";
            case Tok::End: return "<eof>";
        }
        return "?";
    }

    bool at(Tok t) const { return cur().tok == t; }
    bool at_keyword(const char* kw) const { return at(Tok::Ident) && cur().text == kw; }

    void expect(Tok t, const char* what) {
        if (!at(t)) fail_expected(what);
        next();
    }

    void expect_keyword(const char* kw) {
        if (!at_keyword(kw)) fail_expected(std::string("'") + kw + "'");
        next();
    }

    std::string expect_ident(const char* what) {
        if (!at(Tok::Ident)) fail_expected(what);
        return next().text;
    }

    ValueKind parse_kind() {
        if (!at(Tok::Ident)) fail_expected("a kind");
        std::string k = next().text;
        if (k == "int") return ValueKind::Int;
        if (k == "float") return ValueKind::Float;
        if (k == "bool") return ValueKind::Bool;
        if (k == "string") return ValueKind::Text;
        if (k == unit_name_) return ValueKind::UnitRef;
        throw ParseError{"unknown kind '" + k + "'", toks_[i_ - 1].pos};
    }

    FieldDecl parse_field() {
        FieldDecl f;
        f.pos = cur().pos;
        if (at_keyword("public")) {
            f.is_public = true;
            next();
        }
        expect_keyword("field");
        f.name = expect_ident("field name");
        expect(Tok::Colon, "':'");
        f.kind = parse_kind();
        if (f.kind == ValueKind::UnitRef) throw ParseError{"fields may not hold unit references", f.pos};
        expect(Tok::Semi, "';'");
        return f;
    }

    MethodDecl parse_callable(bool ctor) {
        MethodDecl m;
        m.pos = cur().pos;
        m.is_ctor = ctor;
        if (ctor) {
            expect_keyword("constructor");
            m.name = "constructor";
        } else {
            expect_keyword("method");
            m.name = expect_ident("method name");
            if (kReserved.count(m.name)) throw ParseError{"'" + m.name + "' is a reserved word", m.pos};
        }
        expect(Tok::LParen, "'('");
        if (!at(Tok::RParen)) {
            while (true) {
                Param p;
                p.pos = cur().pos;
                p.name = expect_ident("parameter name");
                expect(Tok::Colon, "':'");
                p.kind = parse_kind();
                m.params.push_back(std::move(p));
                if (at(Tok::Comma)) {
                    next();
                    continue;
                }
                break;
            }
        }
        expect(Tok::RParen, "')'");
        if (!ctor && at(Tok::Colon)) {
            next();
            m.return_kind = parse_kind();
            if (m.return_kind == ValueKind::UnitRef)
                throw ParseError{"methods may not return unit references", m.pos};
        }
        m.body = parse_block();
        return m;
    }

    std::vector<StmtPtr> parse_block() {
        expect(Tok::LBrace, "'{'");
        std::vector<StmtPtr> body;
        while (!at(Tok::RBrace)) body.push_back(parse_stmt());
        next();
        return body;
    }

    StmtPtr parse_stmt() {
        auto s = std::make_unique<Stmt>();
        s->pos = cur().pos;
        if (at_keyword("var")) {
            next();
            s->tag = Stmt::Tag::Local;
            s->name = expect_ident("local name");
            if (kReserved.count(s->name)) throw ParseError{"'" + s->name + "' is a reserved word", s->pos};
            expect(Tok::Colon, "':'");
            s->declared = parse_kind();
            expect(Tok::Assign, "'='");
            s->value = parse_expr();
            expect(Tok::Semi, "';'");
            return s;
        }
        if (at_keyword("if")) {
            next();
            s->tag = Stmt::Tag::If;
            expect(Tok::LParen, "'('");
            s->value = parse_expr();
            expect(Tok::RParen, "')'");
            s->then_body = parse_block();
            if (at_keyword("else")) {
                next();
                s->else_body = parse_block();
            }
            return s;
        }
        if (at_keyword("while")) {
            next();
            s->tag = Stmt::Tag::While;
            expect(Tok::LParen, "'('");
            s->value = parse_expr();
            expect(Tok::RParen, "')'");
            s->then_body = parse_block();
            return s;
        }
        if (at_keyword("return")) {
            next();
            s->tag = Stmt::Tag::Return;
            if (!at(Tok::Semi)) s->value = parse_expr();
            expect(Tok::Semi, "';'");
            return s;
        }
        if (at_keyword("throw")) {
            next();
            s->tag = Stmt::Tag::Throw;
            if (!at(Tok::String)) fail_expected("a string literal");
            s->text = next().text;
            expect(Tok::Semi, "';'");
            return s;
        }
        if (at_keyword("this")) {
            next();
            expect(Tok::Dot, "'.'");
            std::string member = expect_ident("member name");
            if (at(Tok::Assign)) {
                next();
                s->tag = Stmt::Tag::AssignField;
                s->name = member;
                s->value = parse_expr();
                expect(Tok::Semi, "';'");
                return s;
            }
            if (at(Tok::LParen)) {
                s->tag = Stmt::Tag::ExprStmt;
                auto call = std::make_unique<Expr>();
                call->tag = Expr::Tag::SelfCall;
                call->pos = s->pos;
                call->name = member;
                call->args = parse_args();
                s->value = std::move(call);
                expect(Tok::Semi, "';'");
                return s;
            }
            fail_expected("'=' or '('");
        }
        if (at(Tok::Ident)) {
            std::string name = next().text;
            if (at(Tok::Assign)) {
                next();
                s->tag = Stmt::Tag::AssignLocal;
                s->name = name;
                s->value = parse_expr();
                expect(Tok::Semi, "';'");
                return s;
            }
            if (at(Tok::Dot)) {
                next();
                s->tag = Stmt::Tag::ExprStmt;
                auto call = std::make_unique<Expr>();
                call->tag = Expr::Tag::ParamCall;
                call->pos = s->pos;
                call->recv = name;
                call->name = expect_ident("method name");
                if (!at(Tok::LParen)) fail_expected("'('");
                call->args = parse_args();
                s->value = std::move(call);
                expect(Tok::Semi, "';'");
                return s;
            }
            fail_expected("'=' or '.'");
        }
        fail_expected("a statement");
    }

    std::vector<ExprPtr> parse_args() {
        expect(Tok::LParen, "'('");
        std::vector<ExprPtr> args;
        if (!at(Tok::RParen)) {
            while (true) {
                args.push_back(parse_expr());
                if (at(Tok::Comma)) {
                    next();
                    continue;
                }
                break;
            }
        }
        expect(Tok::RParen, "')'");
        return args;
    }

    ExprPtr parse_expr() { return parse_or(); }

    ExprPtr make_binary(BinOp op, ExprPtr l, ExprPtr r, SourcePos pos) {
        auto e = std::make_unique<Expr>();
        e->tag = Expr::Tag::Binary;
        e->bin = op;
        e->pos = pos;
        e->lhs = std::move(l);
        e->rhs = std::move(r);
        return e;
    }

    ExprPtr parse_or() {
        auto l = parse_and();
        while (at(Tok::OrOr)) {
            SourcePos p = next().pos;
            l = make_binary(BinOp::Or, std::move(l), parse_and(), p);
        }
        return l;
    }

    ExprPtr parse_and() {
        auto l = parse_equality();
        while (at(Tok::AndAnd)) {
            SourcePos p = next().pos;
            l = make_binary(BinOp::And, std::move(l), parse_equality(), p);
        }
        return l;
    }

    ExprPtr parse_equality() {
        auto l = parse_relational();
        while (at(Tok::EqEq) || at(Tok::Ne)) {
            BinOp op = at(Tok::EqEq) ? BinOp::Eq : BinOp::Ne;
            SourcePos p = next().pos;
            l = make_binary(op, std::move(l), parse_relational(), p);
        }
        return l;
    }

    ExprPtr parse_relational() {
        auto l = parse_additive();
        while (at(Tok::Lt) || at(Tok::Le) || at(Tok::Gt) || at(Tok::Ge)) {
            BinOp op = at(Tok::Lt)   ? BinOp::Lt
                       : at(Tok::Le) ? BinOp::Le
                       : at(Tok::Gt) ? BinOp::Gt
                                     : BinOp::Ge;
            SourcePos p = next().pos;
            l = make_binary(op, std::move(l), parse_additive(), p);
        }
        return l;
    }

    ExprPtr parse_additive() {
        auto l = parse_multiplicative();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            BinOp op = at(Tok::Plus) ? BinOp::Add : BinOp::Sub;
            SourcePos p = next().pos;
            l = make_binary(op, std::move(l), parse_multiplicative(), p);
        }
        return l;
    }

    ExprPtr parse_multiplicative() {
        auto l = parse_unary();
        while (at(Tok::Star) || at(Tok::Slash) || at(Tok::Percent)) {
            BinOp op = at(Tok::Star) ? BinOp::Mul : at(Tok::Slash) ? BinOp::Div : BinOp::Mod;
            SourcePos p = next().pos;
            l = make_binary(op, std::move(l), parse_unary(), p);
        }
        return l;
    }

    ExprPtr parse_unary() {
        if (at(Tok::Minus) || at(Tok::Bang)) {
            auto e = std::make_unique<Expr>();
            e->tag = Expr::Tag::Unary;
            e->un = at(Tok::Minus) ? UnOp::Neg : UnOp::Not;
            e->pos = next().pos;
            e->operand = parse_unary();
            return e;
        }
        return parse_primary();
    }

    ExprPtr parse_primary() {
        auto e = std::make_unique<Expr>();
        e->pos = cur().pos;
        if (at(Tok::Int)) {
            e->tag = Expr::Tag::IntLit;
            e->int_val = next().int_val;
            return e;
        }
        if (at(Tok::Float)) {
            e->tag = Expr::Tag::FloatLit;
            e->float_val = next().float_val;
            return e;
        }
        if (at(Tok::String)) {
            e->tag = Expr::Tag::TextLit;
            e->text_val = next().text;
            return e;
        }
        if (at(Tok::LParen)) {
            next();
            auto inner = parse_expr();
            expect(Tok::RParen, "')'");
            return inner;
        }
        if (at_keyword("true") || at_keyword("false")) {
            e->tag = Expr::Tag::BoolLit;
            e->bool_val = next().text == "true";
            return e;
        }
        if (at_keyword("this")) {
            next();
            expect(Tok::Dot, "'.'");
            std::string member = expect_ident("member name");
            if (at(Tok::LParen)) {
                e->tag = Expr::Tag::SelfCall;
                e->name = member;
                e->args = parse_args();
            } else {
                e->tag = Expr::Tag::FieldRead;
                e->name = member;
            }
            return e;
        }
        if (at(Tok::Ident)) {
            std::string name = next().text;
            if (at(Tok::Dot)) {
                next();
                e->tag = Expr::Tag::ParamCall;
                e->recv = name;
                e->name = expect_ident("method name");
                if (!at(Tok::LParen)) fail_expected("'('");
                e->args = parse_args();
            } else {
                e->tag = Expr::Tag::Name;
                e->name = name;
            }
            return e;
        }
        fail_expected("an expression");
    }

public:
    void set_unit_name(const std::string& n) { unit_name_ = n; }
    std::string peek_unit_name() {
        // name needed before kinds parse; grammar starts "unit IDENT {"
        if (toks_.size() >= 2 && toks_[0].tok == Tok::Ident && toks_[0].text == "unit" &&
            toks_[1].tok == Tok::Ident)
            return toks_[1].text;
        return "";
    }
};

// ---------------------------------------------------------------------------
// node ids
// ---------------------------------------------------------------------------

void number_expr(Expr& e, int& counter) {
    e.node_id = counter++;
    switch (e.tag) {
        case Expr::Tag::Binary:
            number_expr(*e.lhs, counter);
            number_expr(*e.rhs, counter);
            break;
        case Expr::Tag::Unary:
            number_expr(*e.operand, counter);
            break;
        case Expr::Tag::SelfCall:
        case Expr::Tag::ParamCall:
            for (auto& a : e.args) number_expr(*a, counter);
            break;
        default:
            break;
    }
}

void number_stmt(Stmt& s, int& counter) {
    s.node_id = counter++;
    if (s.value) number_expr(*s.value, counter);
    for (auto& c : s.then_body) number_stmt(*c, counter);
    for (auto& c : s.else_body) number_stmt(*c, counter);
}

// ---------------------------------------------------------------------------
// resolution and kind checking
// ---------------------------------------------------------------------------

class Checker {
public:
    explicit Checker(SubjectUnit& u) : unit_(u) {}

    void run() {
        std::set<std::string> names;
        for (auto& m : unit_.methods) {
            if (!names.insert(m.name).second)
                throw ParseError{"duplicate method name '" + m.name + "'", m.pos};
        }
        std::set<std::string> field_names;
        for (auto& f : unit_.fields) {
            if (!field_names.insert(f.name).second)
                throw ParseError{"duplicate field name '" + f.name + "'", f.pos};
        }
        for (auto& m : unit_.constructors) check_method(m);
        for (auto& m : unit_.methods) check_method(m);
        classify_inspectors();
    }

private:
    SubjectUnit& unit_;
    std::map<std::string, ValueKind> scope_;
    const MethodDecl* current_ = nullptr;
    std::map<std::string, std::set<std::string>> calls_;
    std::map<std::string, bool> writes_;

    [[noreturn]] void err(const std::string& msg, SourcePos pos) const { throw ParseError{msg, pos}; }

    void check_method(MethodDecl& m) {
        scope_.clear();
        current_ = &m;
        writes_[m.name] = false;
        calls_[m.name];
        for (auto& p : m.params) {
            if (scope_.count(p.name)) err("duplicate parameter '" + p.name + "'", p.pos);
            scope_[p.name] = p.kind;
        }
        collect_locals(m.body);
        for (auto& s : m.body) check_stmt(*s);
    }

    // Locals are method-scoped and pre-initialized to kind defaults at
    // entry, so declarations inside branches are harmless.
    void collect_locals(const std::vector<StmtPtr>& body) {
        for (auto& s : body) {
            if (s->tag == Stmt::Tag::Local) {
                if (scope_.count(s->name)) err("duplicate local '" + s->name + "'", s->pos);
                scope_[s->name] = s->declared;
            }
            collect_locals(s->then_body);
            collect_locals(s->else_body);
        }
    }

    void check_stmt(Stmt& s) {
        switch (s.tag) {
            case Stmt::Tag::Local: {
                ValueKind k = check_expr(*s.value);
                if (k != s.declared)
                    err(std::string("cannot initialize ") + kind_name(s.declared) + " local '" +
                            s.name + "' with " + kind_name(k),
                        s.pos);
                break;
            }
            case Stmt::Tag::AssignLocal: {
                auto it = scope_.find(s.name);
                if (it == scope_.end()) err("unknown identifier '" + s.name + "'", s.pos);
                ValueKind k = check_expr(*s.value);
                if (k != it->second)
                    err(std::string("cannot assign ") + kind_name(k) + " to " +
                            kind_name(it->second) + " '" + s.name + "'",
                        s.pos);
                break;
            }
            case Stmt::Tag::AssignField: {
                const FieldDecl* f = unit_.find_field(s.name);
                if (!f) err("unknown field '" + s.name + "'", s.pos);
                ValueKind k = check_expr(*s.value);
                if (k != f->kind)
                    err(std::string("cannot assign ") + kind_name(k) + " to " +
                            kind_name(f->kind) + " field '" + s.name + "'",
                        s.pos);
                writes_[current_->name] = true;
                break;
            }
            case Stmt::Tag::If:
            case Stmt::Tag::While: {
                ValueKind k = check_expr(*s.value);
                if (k != ValueKind::Bool) err("condition must be bool", s.pos);
                for (auto& c : s.then_body) check_stmt(*c);
                for (auto& c : s.else_body) check_stmt(*c);
                break;
            }
            case Stmt::Tag::Return: {
                if (current_->return_kind == ValueKind::None) {
                    if (s.value) err("'" + current_->name + "' returns no value", s.pos);
                } else {
                    if (!s.value) err("'" + current_->name + "' must return a value", s.pos);
                    ValueKind k = check_expr(*s.value);
                    if (k != current_->return_kind)
                        err(std::string("return kind mismatch: expected ") +
                                kind_name(current_->return_kind) + ", found " + kind_name(k),
                            s.pos);
                }
                break;
            }
            case Stmt::Tag::Throw:
                break;
            case Stmt::Tag::ExprStmt:
                check_expr(*s.value);
                break;
        }
    }

    ValueKind value_kind_or_err(Expr& e) {
        ValueKind k = check_expr(e);
        if (k == ValueKind::None) err("'" + e.name + "' returns no value", e.pos);
        return k;
    }

    void check_call_args(Expr& e, const MethodDecl& target) {
        if (e.args.size() != target.params.size())
            err("'" + target.name + "' expects " + std::to_string(target.params.size()) +
                    " argument(s), got " + std::to_string(e.args.size()),
                e.pos);
        for (size_t i = 0; i < e.args.size(); ++i) {
            ValueKind k = value_kind_or_err(*e.args[i]);
            if (k != target.params[i].kind)
                err(std::string("argument ") + std::to_string(i + 1) + " of '" + target.name +
                        "': expected " + kind_name(target.params[i].kind) + ", found " +
                        kind_name(k),
                    e.args[i]->pos);
        }
    }

    ValueKind check_expr(Expr& e) {
        switch (e.tag) {
            case Expr::Tag::IntLit: return e.type = ValueKind::Int;
            case Expr::Tag::FloatLit: return e.type = ValueKind::Float;
            case Expr::Tag::BoolLit: return e.type = ValueKind::Bool;
            case Expr::Tag::TextLit: return e.type = ValueKind::Text;
            case Expr::Tag::Name: {
                auto it = scope_.find(e.name);
                if (it == scope_.end()) err("unknown identifier '" + e.name + "'", e.pos);
                return e.type = it->second;
            }
            case Expr::Tag::FieldRead: {
                const FieldDecl* f = unit_.find_field(e.name);
                if (!f) err("unknown field '" + e.name + "'", e.pos);
                return e.type = f->kind;
            }
            case Expr::Tag::SelfCall: {
                const MethodDecl* m = unit_.find_method(e.name);
                if (!m) err("unknown method '" + e.name + "'", e.pos);
                check_call_args(e, *m);
                calls_[current_->name].insert(e.name);
                return e.type = m->return_kind;
            }
            case Expr::Tag::ParamCall: {
                auto it = scope_.find(e.recv);
                if (it == scope_.end()) err("unknown identifier '" + e.recv + "'", e.pos);
                if (it->second != ValueKind::UnitRef)
                    err("'" + e.recv + "' is not a unit reference", e.pos);
                const MethodDecl* m = unit_.find_method(e.name);
                if (!m) err("unknown method '" + e.name + "'", e.pos);
                check_call_args(e, *m);
                calls_[current_->name].insert(e.name);
                return e.type = m->return_kind;
            }
            case Expr::Tag::Binary: {
                ValueKind l = value_kind_or_err(*e.lhs);
                ValueKind r = value_kind_or_err(*e.rhs);
                auto numeric = [](ValueKind k) { return k == ValueKind::Int || k == ValueKind::Float; };
                if (is_arith(e.bin)) {
                    if (!numeric(l) || !numeric(r))
                        err(std::string("operator '") + binop_text(e.bin) + "' needs numeric operands, found " +
                                kind_name(l) + " and " + kind_name(r),
                            e.pos);
                    return e.type = (l == ValueKind::Float || r == ValueKind::Float) ? ValueKind::Float
                                                                                     : ValueKind::Int;
                }
                if (is_equality(e.bin)) {
                    bool ok = (numeric(l) && numeric(r)) ||
                              (l == r && (l == ValueKind::Bool || l == ValueKind::Text));
                    if (!ok)
                        err(std::string("operator '") + binop_text(e.bin) + "' cannot compare " +
                                kind_name(l) + " and " + kind_name(r),
                            e.pos);
                    return e.type = ValueKind::Bool;
                }
                if (is_comparison(e.bin)) {
                    if (!numeric(l) || !numeric(r))
                        err(std::string("operator '") + binop_text(e.bin) +
                                "' needs numeric operands, found " + kind_name(l) + " and " +
                                kind_name(r),
                            e.pos);
                    return e.type = ValueKind::Bool;
                }
                // logical
                if (l != ValueKind::Bool || r != ValueKind::Bool)
                    err(std::string("operator '") + binop_text(e.bin) + "' needs bool operands", e.pos);
                return e.type = ValueKind::Bool;
            }
            case Expr::Tag::Unary: {
                ValueKind k = value_kind_or_err(*e.operand);
                if (e.un == UnOp::Neg) {
                    if (k != ValueKind::Int && k != ValueKind::Float)
                        err("unary '-' needs a numeric operand", e.pos);
                    return e.type = k;
                }
                if (k != ValueKind::Bool) err("unary '!' needs a bool operand", e.pos);
                return e.type = ValueKind::Bool;
            }
        }
        return ValueKind::None;
    }

    void classify_inspectors() {
        // transitive closure of call edges; any reachable field write
        // disqualifies a method from being an inspector
        for (auto& m : unit_.methods) {
            if (m.return_kind == ValueKind::None || !m.params.empty()) continue;
            std::set<std::string> seen{m.name};
            std::vector<std::string> work{m.name};
            bool writes = false;
            while (!work.empty() && !writes) {
                std::string cur = work.back();
                work.pop_back();
                if (writes_[cur]) writes = true;
                for (auto& callee : calls_[cur]) {
                    if (seen.insert(callee).second) work.push_back(callee);
                }
            }
            m.is_inspector = !writes;
        }
    }
};

}  // namespace

SubjectUnit parse_subject(const std::string& source) {
    Parser p(source);
    std::string name = p.peek_unit_name();
    p.set_unit_name(name);
    SubjectUnit u = p.parse();
    int counter = 0;
    for (auto& m : u.constructors)
        for (auto& s : m.body) number_stmt(*s, counter);
    for (auto& m : u.methods)
        for (auto& s : m.body) number_stmt(*s, counter);
    Checker(u).run();
    return u;
}

// ---------------------------------------------------------------------------
// SubjectUnit helpers
// ---------------------------------------------------------------------------

const MethodDecl* SubjectUnit::find_method(const std::string& n) const {
    for (auto& m : methods)
        if (m.name == n) return &m;
    for (auto& m : constructors)
        if (m.name == n) return &m;
    return nullptr;
}

const FieldDecl* SubjectUnit::find_field(const std::string& n) const {
    for (auto& f : fields)
        if (f.name == n) return &f;
    return nullptr;
}

int SubjectUnit::field_index(const std::string& n) const {
    for (size_t i = 0; i < fields.size(); ++i)
        if (fields[i].name == n) return static_cast<int>(i);
    return -1;
}

std::vector<const MethodDecl*> SubjectUnit::decls() const {
    std::vector<const MethodDecl*> out;
    for (auto& m : constructors) out.push_back(&m);
    for (auto& m : methods) out.push_back(&m);
    return out;
}

const char* binop_text(BinOp op) {
    switch (op) {
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
        case BinOp::Div: return "/";
        case BinOp::Mod: return "%";
        case BinOp::Lt: return "<";
        case BinOp::Le: return "<=";
        case BinOp::Gt: return ">";
        case BinOp::Ge: return ">=";
        case BinOp::Eq: return "==";
        case BinOp::Ne: return "!=";
        case BinOp::And: return "&&";
        case BinOp::Or: return "||";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// clone
// ---------------------------------------------------------------------------

ExprPtr clone(const Expr& e) {
    auto c = std::make_unique<Expr>();
    c->tag = e.tag;
    c->pos = e.pos;
    c->node_id = e.node_id;
    c->type = e.type;
    c->int_val = e.int_val;
    c->float_val = e.float_val;
    c->bool_val = e.bool_val;
    c->text_val = e.text_val;
    c->name = e.name;
    c->recv = e.recv;
    c->bin = e.bin;
    c->un = e.un;
    for (auto& a : e.args) c->args.push_back(clone(*a));
    if (e.lhs) c->lhs = clone(*e.lhs);
    if (e.rhs) c->rhs = clone(*e.rhs);
    if (e.operand) c->operand = clone(*e.operand);
    return c;
}

StmtPtr clone(const Stmt& s) {
    auto c = std::make_unique<Stmt>();
    c->tag = s.tag;
    c->pos = s.pos;
    c->node_id = s.node_id;
    c->name = s.name;
    c->declared = s.declared;
    c->text = s.text;
    if (s.value) c->value = clone(*s.value);
    for (auto& b : s.then_body) c->then_body.push_back(clone(*b));
    for (auto& b : s.else_body) c->else_body.push_back(clone(*b));
    return c;
}

SubjectUnit clone(const SubjectUnit& u) {
    SubjectUnit c;
    c.name = u.name;
    c.fields = u.fields;
    auto clone_method = [](const MethodDecl& m) {
        MethodDecl out;
        out.name = m.name;
        out.params = m.params;
        out.return_kind = m.return_kind;
        out.is_ctor = m.is_ctor;
        out.is_inspector = m.is_inspector;
        out.pos = m.pos;
        for (auto& s : m.body) out.body.push_back(clone(*s));
        return out;
    };
    for (auto& m : u.constructors) c.constructors.push_back(clone_method(m));
    for (auto& m : u.methods) c.methods.push_back(clone_method(m));
    return c;
}

// ---------------------------------------------------------------------------
// pretty printing
// ---------------------------------------------------------------------------

namespace {

int precedence(const Expr& e) {
    if (e.tag == Expr::Tag::Unary) return 7;
    if (e.tag != Expr::Tag::Binary) return 8;
    switch (e.bin) {
        case BinOp::Or: return 1;
        case BinOp::And: return 2;
        case BinOp::Eq:
        case BinOp::Ne: return 3;
        case BinOp::Lt:
        case BinOp::Le:
        case BinOp::Gt:
        case BinOp::Ge: return 4;
        case BinOp::Add:
        case BinOp::Sub: return 5;
        default: return 6;
    }
}

void print_expr(const Expr& e, std::ostream& os, int min_prec) {
    int prec = precedence(e);
    bool parens = prec < min_prec;
    if (parens) os << "(";
    switch (e.tag) {
        case Expr::Tag::IntLit: os << e.int_val; break;
        case Expr::Tag::FloatLit: os << format_float(e.float_val); break;
        case Expr::Tag::BoolLit: os << (e.bool_val ? "true" : "false"); break;
        case Expr::Tag::TextLit: os << '"' << escape_text(e.text_val) << '"'; break;
        case Expr::Tag::Name: os << e.name; break;
        case Expr::Tag::FieldRead: os << "this." << e.name; break;
        case Expr::Tag::SelfCall:
        case Expr::Tag::ParamCall: {
            if (e.tag == Expr::Tag::SelfCall)
                os << "this." << e.name << "(";
            else
                os << e.recv << "." << e.name << "(";
            for (size_t i = 0; i < e.args.size(); ++i) {
                if (i) os << ", ";
                print_expr(*e.args[i], os, 0);
            }
            os << ")";
            break;
        }
        case Expr::Tag::Binary:
            print_expr(*e.lhs, os, prec);
            os << " " << binop_text(e.bin) << " ";
            print_expr(*e.rhs, os, prec + 1);
            break;
        case Expr::Tag::Unary:
            os << (e.un == UnOp::Neg ? "-" : "!");
            print_expr(*e.operand, os, 7);
            break;
    }
    if (parens) os << ")";
}

void print_stmt(const Stmt& s, std::ostream& os, int indent);

void print_block(const std::vector<StmtPtr>& body, std::ostream& os, int indent) {
    os << "{\n";
    for (auto& st : body) print_stmt(*st, os, indent + 1);
    for (int i = 0; i < indent; ++i) os << "  ";
    os << "}";
}

void print_stmt(const Stmt& s, std::ostream& os, int indent) {
    for (int i = 0; i < indent; ++i) os << "  ";
    switch (s.tag) {
        case Stmt::Tag::Local:
            os << "var " << s.name << ": " << kind_name(s.declared) << " = ";
            print_expr(*s.value, os, 0);
            os << ";\n";
            break;
        case Stmt::Tag::AssignLocal:
            os << s.name << " = ";
            print_expr(*s.value, os, 0);
            os << ";\n";
            break;
        case Stmt::Tag::AssignField:
            os << "this." << s.name << " = ";
            print_expr(*s.value, os, 0);
            os << ";\n";
            break;
        case Stmt::Tag::If:
            os << "if (";
            print_expr(*s.value, os, 0);
            os << ") ";
            print_block(s.then_body, os, indent);
            if (!s.else_body.empty()) {
                os << " else ";
                print_block(s.else_body, os, indent);
            }
            os << "\n";
            break;
        case Stmt::Tag::While:
            os << "while (";
            print_expr(*s.value, os, 0);
            os << ") ";
            print_block(s.then_body, os, indent);
            os << "\n";
            break;
        case Stmt::Tag::Return:
            os << "return";
            if (s.value) {
                os << " ";
                print_expr(*s.value, os, 0);
            }
            os << ";\n";
            break;
        case Stmt::Tag::Throw:
            os << "throw \"" << escape_text(s.text) << "\";\n";
            break;
        case Stmt::Tag::ExprStmt:
            print_expr(*s.value, os, 0);
            os << ";\n";
            break;
    }
}

void print_method(const MethodDecl& m, std::ostream& os, const std::string& unit_name) {
    os << "  " << (m.is_ctor ? "constructor" : "method " + m.name) << "(";
    for (size_t i = 0; i < m.params.size(); ++i) {
        if (i) os << ", ";
        os << m.params[i].name << ": "
           << (m.params[i].kind == ValueKind::UnitRef ? unit_name : kind_name(m.params[i].kind));
    }
    os << ")";
    if (m.return_kind != ValueKind::None) os << ": " << kind_name(m.return_kind);
    os << " ";
    print_block(m.body, os, 1);
    os << "\n";
}

}  // namespace

std::string pretty_print(const Expr& e) {
    std::ostringstream os;
    print_expr(e, os, 0);
    return os.str();
}

std::string pretty_print(const SubjectUnit& unit) {
    std::ostringstream os;
    os << "unit " << unit.name << " {\n";
    for (auto& f : unit.fields) {
        os << "  ";
        if (f.is_public) os << "public ";
        os << "field " << f.name << ": " << kind_name(f.kind) << ";\n";
    }
    os << "\n";
    for (auto& m : unit.constructors) print_method(m, os, unit.name);
    for (auto& m : unit.methods) {
        os << "\n";
        print_method(m, os, unit.name);
    }
    os << "}\n";
    return os.str();
}

}  // namespace srgen
