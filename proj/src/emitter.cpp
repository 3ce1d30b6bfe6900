#include "srgen/emitter.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "srgen/lexer.hpp"

namespace srgen {

namespace {

std::string kind_text(ValueKind k, const std::string& unit_name) {
    return k == ValueKind::UnitRef ? unit_name : kind_name(k);
}

class TestRenderer {
public:
    TestRenderer(const TestCase& test, const SubjectInfo& info) : test_(test), info_(info) {
        int next = 0;
        var_name_.assign(test.stmts.size(), "");
        for (size_t i = 0; i < test.stmts.size(); ++i)
            if (test.stmts[i].defines()) var_name_[i] = "v" + std::to_string(next++);
    }

    std::string var(int idx) const { return var_name_[idx]; }

    std::string statement(int i) const {
        const Statement& s = test_.stmts[i];
        const std::string& unit = info_.unit().name;
        std::ostringstream os;
        switch (s.kind) {
            case Statement::Kind::Primitive:
                os << "var " << var(i) << ": " << kind_text(s.defined, unit) << " = "
                   << format_literal(s.literal) << ";";
                break;
            case Statement::Kind::Constructor: {
                os << "var " << var(i) << ": " << unit << " = new " << unit << "(";
                for (size_t k = 0; k < s.args.size(); ++k) {
                    if (k) os << ", ";
                    os << var(s.args[k]);
                }
                os << ");";
                break;
            }
            case Statement::Kind::Method: {
                if (s.defines())
                    os << "var " << var(i) << ": " << kind_text(s.defined, unit) << " = ";
                os << var(s.receiver) << "." << s.method << "(";
                for (size_t k = 0; k < s.args.size(); ++k) {
                    if (k) os << ", ";
                    os << var(s.args[k]);
                }
                os << ");";
                break;
            }
            case Statement::Kind::Field:
                os << "var " << var(i) << ": " << kind_text(s.defined, unit) << " = "
                   << var(s.receiver) << "." << s.field << ";";
                break;
            case Statement::Kind::Assignment:
                os << "var " << var(i) << ": " << kind_text(s.defined, unit) << " = "
                   << var(s.source) << ";";
                break;
        }
        return os.str();
    }

    std::string assertion(const Assertion& a) const {
        std::ostringstream os;
        os << "assert ";
        switch (a.point.kind) {
            case Observation::Kind::ExceptionStatus:
                if (a.point.is_exception)
                    os << "throws \"" << escape_text(a.point.exception_text) << "\"";
                else
                    os << "completes";
                break;
            case Observation::Kind::StatementReturn:
                os << var(a.point.stmt_index - 1) << " == " << format_literal(a.point.value);
                if (a.point.value.kind() == ValueKind::Float)
                    os << " tol " << format_float(a.tolerance);
                break;
            case Observation::Kind::InspectorValue:
                os << var(a.point.stmt_index - 1) << "." << a.point.inspector << "()";
                if (a.point.is_exception) {
                    os << " throws \"" << escape_text(a.point.exception_text) << "\"";
                } else {
                    os << " == " << format_literal(a.point.value);
                    if (a.point.value.kind() == ValueKind::Float)
                        os << " tol " << format_float(a.tolerance);
                }
                break;
        }
        if (a.fallback) os << " fallback";
        os << ";";
        return os.str();
    }

private:
    const TestCase& test_;
    const SubjectInfo& info_;
    std::vector<std::string> var_name_;
};

}  // namespace

RenderedSuite render_suite(const std::vector<TestCase>& suite,
                           const std::vector<std::vector<Assertion>>& assertions,
                           const SubjectInfo& info, const RenderStyle& style) {
    RenderedSuite out;
    out.subject = info.unit().name;
    out.repr = suite.empty() ? Representation::Baseline : suite[0].repr;

    std::map<std::string, int> per_method;
    int baseline_counter = 0;

    std::ostringstream file;
    file << "// Generated tests for " << out.subject << "\n";
    if (!suite.empty()) out.repr = suite[0].repr;
    file << "suite " << out.subject << " " << repr_name(out.repr) << "\n";

    for (size_t t = 0; t < suite.size(); ++t) {
        const TestCase& test = suite[t];
        std::string name;
        if (test.repr == Representation::Focal)
            name = "test_" + test.focal_method + "_" + std::to_string(++per_method[test.focal_method]);
        else
            name = "test_" + std::to_string(++baseline_counter);

        TestRenderer r(test, info);
        std::ostringstream body;
        body << "test " << name << " {\n";
        bool focal = test.repr == Representation::Focal;
        for (int i = 0; i < test.size(); ++i) {
            if (style.aaa_comments && focal && i == 0 && test.size() > 1) body << "  // arrange\n";
            if (style.aaa_comments && focal && i == test.focal_index()) body << "  // act\n";
            body << "  " << r.statement(i) << "\n";
        }
        if (!assertions[t].empty() && style.aaa_comments) body << "  // assert\n";
        for (const Assertion& a : assertions[t]) body << "  " << r.assertion(a) << "\n";
        body << "}\n";

        out.names.push_back(name);
        out.sources.push_back(body.str());
        file << "\n" << body.str();
    }

    out.file_text = file.str();
    return out;
}

// ---------------------------------------------------------------------------
// suite parsing
// ---------------------------------------------------------------------------

namespace {

class SuiteParser {
public:
    SuiteParser(const std::string& text, const SubjectInfo& info, double default_tol)
        : toks_(lex(text)), info_(info), default_tol_(default_tol) {}

    ParsedSuite parse() {
        ParsedSuite out;
        expect_word("suite");
        out.subject = expect_ident("subject name");
        if (out.subject != info_.unit().name)
            fail("suite subject '" + out.subject + "' does not match unit '" + info_.unit().name + "'");
        std::string r = expect_ident("representation");
        if (r == "baseline")
            out.repr = Representation::Baseline;
        else if (r == "focal")
            out.repr = Representation::Focal;
        else
            fail("unknown representation '" + r + "' (expected baseline or focal)");

        while (!at(Tok::End)) {
            expect_word("test");
            std::string name = expect_ident("test name");
            for (auto& n : out.names)
                if (n == name) fail("duplicate test name '" + name + "'");
            auto [test, asserts] = parse_test(out.repr);
            out.names.push_back(name);
            out.tests.push_back(std::move(test));
            out.assertions.push_back(std::move(asserts));
        }
        return out;
    }

private:
    std::vector<Token> toks_;
    size_t i_ = 0;
    const SubjectInfo& info_;
    double default_tol_;

    const Token& cur() const { return toks_[i_]; }
    const Token& next() { return toks_[i_++]; }
    bool at(Tok t) const { return cur().tok == t; }
    bool at_word(const char* w) const { return at(Tok::Ident) && cur().text == w; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError{msg, cur().pos}; }

    void expect(Tok t, const char* what) {
        if (!at(t)) fail(std::string("expected ") + what);
        next();
    }
    void expect_word(const char* w) {
        if (!at_word(w)) fail(std::string("expected '") + w + "'");
        next();
    }
    std::string expect_ident(const char* what) {
        if (!at(Tok::Ident)) fail(std::string("expected ") + what);
        return next().text;
    }

    ValueKind parse_kind() {
        std::string k = expect_ident("a kind");
        if (k == "int") return ValueKind::Int;
        if (k == "float") return ValueKind::Float;
        if (k == "bool") return ValueKind::Bool;
        if (k == "string") return ValueKind::Text;
        if (k == info_.unit().name) return ValueKind::UnitRef;
        fail("unknown kind '" + k + "'");
    }

    Value parse_literal(ValueKind want) {
        bool neg = false;
        if (at(Tok::Minus)) {
            neg = true;
            next();
        }
        if (at(Tok::Int)) {
            int64_t v = next().int_val;
            if (neg) v = -v;
            if (want == ValueKind::Float) return Value::of_float(static_cast<double>(v));
            return Value::of_int(v);
        }
        if (at(Tok::Float)) {
            double v = next().float_val;
            return Value::of_float(neg ? -v : v);
        }
        if (neg) fail("expected a number after '-'");
        if (at(Tok::String)) return Value::of_text(next().text);
        if (at_word("true") || at_word("false")) return Value::of_bool(next().text == "true");
        fail("expected a literal");
    }

    double parse_tol_clause() {
        next();  // 'tol'
        if (at(Tok::Float)) return next().float_val;
        if (at(Tok::Int)) return static_cast<double>(next().int_val);
        fail("expected a tolerance value");
    }

    std::pair<TestCase, std::vector<Assertion>> parse_test(Representation repr) {
        TestCase test;
        test.repr = repr;
        std::vector<Assertion> asserts;
        std::map<std::string, int> var_index;
        expect(Tok::LBrace, "'{'");

        bool in_assert_section = false;
        while (!at(Tok::RBrace)) {
            if (at_word("assert")) {
                in_assert_section = true;
                asserts.push_back(parse_assertion(test, var_index, asserts.size()));
                continue;
            }
            if (in_assert_section) fail("statements must precede assertions");
            parse_statement(test, var_index);
        }
        next();  // '}'

        if (repr == Representation::Focal) {
            if (test.stmts.empty()) fail("focal test without statements");
            const Statement& last = test.stmts.back();
            if (last.kind == Statement::Kind::Method)
                test.focal_method = last.method;
            else if (last.kind == Statement::Kind::Constructor)
                test.focal_method = "constructor";
            else
                fail("the last statement of a focal test must be a call");
        }
        GenConfig permissive;
        permissive.max_len = 1 << 16;
        auto problems = validate_test(test, info_, permissive);
        if (!problems.empty()) fail(problems.front());
        return {std::move(test), std::move(asserts)};
    }

    int lookup_var(const std::string& name, const std::map<std::string, int>& vars) {
        auto it = vars.find(name);
        if (it == vars.end()) fail("unknown variable '" + name + "'");
        return it->second;
    }

    std::vector<int> parse_var_args(const std::map<std::string, int>& vars) {
        expect(Tok::LParen, "'('");
        std::vector<int> out;
        if (!at(Tok::RParen)) {
            while (true) {
                out.push_back(lookup_var(expect_ident("a variable"), vars));
                if (at(Tok::Comma)) {
                    next();
                    continue;
                }
                break;
            }
        }
        expect(Tok::RParen, "')'");
        return out;
    }

    void parse_statement(TestCase& test, std::map<std::string, int>& vars) {
        if (at_word("var")) {
            next();
            std::string name = expect_ident("variable name");
            if (vars.count(name)) fail("duplicate variable '" + name + "'");
            expect(Tok::Colon, "':'");
            ValueKind declared = parse_kind();
            expect(Tok::Assign, "'='");

            Statement s;
            s.defined = declared;
            if (at_word("new")) {
                next();
                std::string unit = expect_ident("unit name");
                if (unit != info_.unit().name) fail("unknown unit '" + unit + "'");
                if (declared != ValueKind::UnitRef) fail("constructor result must be unit-typed");
                s.kind = Statement::Kind::Constructor;
                s.args = parse_var_args(vars);
            } else if (at(Tok::Ident) && !at_word("true") && !at_word("false")) {
                std::string first = next().text;
                if (at(Tok::Dot)) {
                    next();
                    std::string member = expect_ident("member name");
                    int recv = lookup_var(first, vars);
                    if (at(Tok::LParen)) {
                        s.kind = Statement::Kind::Method;
                        s.method = member;
                        s.receiver = recv;
                        s.args = parse_var_args(vars);
                    } else {
                        s.kind = Statement::Kind::Field;
                        s.field = member;
                        s.receiver = recv;
                    }
                } else {
                    s.kind = Statement::Kind::Assignment;
                    s.source = lookup_var(first, vars);
                }
            } else {
                s.kind = Statement::Kind::Primitive;
                s.literal = parse_literal(declared);
                if (s.literal.kind() != declared) fail("literal kind does not match declaration");
            }
            expect(Tok::Semi, "';'");
            test.stmts.push_back(std::move(s));
            vars[name] = test.size() - 1;
            return;
        }
        if (at(Tok::Ident)) {
            // void method call: v0.method(args);
            std::string recv = next().text;
            expect(Tok::Dot, "'.'");
            std::string method = expect_ident("method name");
            Statement s;
            s.kind = Statement::Kind::Method;
            s.method = method;
            s.receiver = lookup_var(recv, vars);
            s.args = parse_var_args(vars);
            expect(Tok::Semi, "';'");
            test.stmts.push_back(std::move(s));
            return;
        }
        fail("expected a statement or an assertion");
    }

    Assertion parse_assertion(const TestCase& test, const std::map<std::string, int>& vars,
                              size_t id) {
        next();  // 'assert'
        Assertion a;
        a.id = static_cast<int>(id);
        a.tolerance = default_tol_;

        if (at_word("completes")) {
            next();
            a.point.kind = Observation::Kind::ExceptionStatus;
            a.point.stmt_index = test.size();
        } else if (at_word("throws")) {
            next();
            if (!at(Tok::String)) fail("expected an exception text");
            a.point.kind = Observation::Kind::ExceptionStatus;
            a.point.stmt_index = test.size();
            a.point.is_exception = true;
            a.point.exception_text = next().text;
        } else {
            std::string name = expect_ident("a variable");
            int idx = lookup_var(name, vars);
            if (at(Tok::Dot)) {
                next();
                std::string inspector = expect_ident("inspector name");
                expect(Tok::LParen, "'('");
                expect(Tok::RParen, "')'");
                a.point.kind = Observation::Kind::InspectorValue;
                a.point.stmt_index = idx + 1;
                a.point.inspector = inspector;
                const MethodDecl* m = info_.unit().find_method(inspector);
                if (!m || !m->is_inspector) fail("'" + inspector + "' is not an inspector");
                if (at_word("throws")) {
                    next();
                    if (!at(Tok::String)) fail("expected an exception text");
                    a.point.is_exception = true;
                    a.point.exception_text = next().text;
                } else {
                    expect(Tok::EqEq, "'=='");
                    a.point.value = parse_literal(m->return_kind);
                    if (at_word("tol")) a.tolerance = parse_tol_clause();
                }
            } else {
                expect(Tok::EqEq, "'=='");
                a.point.kind = Observation::Kind::StatementReturn;
                a.point.stmt_index = idx + 1;
                a.point.value = parse_literal(test.stmts[idx].defined);
                if (at_word("tol")) a.tolerance = parse_tol_clause();
            }
        }
        if (at_word("fallback")) {
            next();
            a.fallback = true;
        }
        expect(Tok::Semi, "';'");
        return a;
    }
};

}  // namespace

ParsedSuite parse_suite(const std::string& text, const SubjectInfo& info, double default_tolerance) {
    SuiteParser p(text, info, default_tolerance);
    return p.parse();
}

}  // namespace srgen
