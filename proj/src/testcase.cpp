#include "srgen/testcase.hpp"

namespace srgen {

const char* repr_name(Representation r) {
    return r == Representation::Baseline ? "baseline" : "focal";
}

bool Statement::operator==(const Statement& o) const {
    return kind == o.kind && defined == o.defined && literal == o.literal && method == o.method &&
           receiver == o.receiver && args == o.args && field == o.field && source == o.source;
}

bool TestCase::operator==(const TestCase& o) const {
    return repr == o.repr && focal_method == o.focal_method && stmts == o.stmts;
}

std::vector<std::string> validate_test(const TestCase& t, const SubjectInfo& info,
                                       const GenConfig& cfg) {
    std::vector<std::string> problems;
    const SubjectUnit& unit = info.unit();
    auto bad = [&](const std::string& msg) { problems.push_back(msg); };

    int n = t.size();
    if (n < 1) bad("empty statement list");
    if (n > cfg.max_len) bad("length " + std::to_string(n) + " exceeds cap");

    auto check_ref = [&](int i, int r, ValueKind kind, const char* what) {
        if (r < 0 || r >= i) {
            bad("statement " + std::to_string(i) + ": " + what + " reference out of range");
            return;
        }
        const Statement& d = t.stmts[r];
        if (!d.defines()) {
            bad("statement " + std::to_string(i) + ": " + what + " refers to a non-defining statement");
            return;
        }
        if (d.defined != kind)
            bad("statement " + std::to_string(i) + ": " + what + " kind mismatch (" +
                kind_name(d.defined) + " vs " + kind_name(kind) + ")");
    };

    for (int i = 0; i < n; ++i) {
        const Statement& s = t.stmts[i];
        switch (s.kind) {
            case Statement::Kind::Primitive:
                if (s.literal.kind() != s.defined)
                    bad("statement " + std::to_string(i) + ": literal kind mismatch");
                break;
            case Statement::Kind::Constructor: {
                const MethodDecl& ctor = unit.constructors.front();
                if (s.defined != ValueKind::UnitRef)
                    bad("statement " + std::to_string(i) + ": constructor defines non-unit value");
                if (s.args.size() != ctor.params.size()) {
                    bad("statement " + std::to_string(i) + ": constructor arity mismatch");
                    break;
                }
                for (size_t k = 0; k < s.args.size(); ++k)
                    check_ref(i, s.args[k], ctor.params[k].kind, "constructor argument");
                break;
            }
            case Statement::Kind::Method: {
                const MethodDecl* m = unit.find_method(s.method);
                if (!m || m->is_ctor) {
                    bad("statement " + std::to_string(i) + ": unknown method '" + s.method + "'");
                    break;
                }
                if (s.defined != m->return_kind)
                    bad("statement " + std::to_string(i) + ": defined kind differs from return kind");
                check_ref(i, s.receiver, ValueKind::UnitRef, "receiver");
                if (s.args.size() != m->params.size()) {
                    bad("statement " + std::to_string(i) + ": call arity mismatch");
                    break;
                }
                for (size_t k = 0; k < s.args.size(); ++k)
                    check_ref(i, s.args[k], m->params[k].kind, "argument");
                break;
            }
            case Statement::Kind::Field: {
                const FieldDecl* f = unit.find_field(s.field);
                if (!f) {
                    bad("statement " + std::to_string(i) + ": unknown field '" + s.field + "'");
                    break;
                }
                if (!f->is_public)
                    bad("statement " + std::to_string(i) + ": field '" + s.field + "' is not public");
                if (s.defined != f->kind)
                    bad("statement " + std::to_string(i) + ": field kind mismatch");
                check_ref(i, s.receiver, ValueKind::UnitRef, "receiver");
                break;
            }
            case Statement::Kind::Assignment:
                check_ref(i, s.source, s.defined, "assignment source");
                break;
        }
    }

    if (t.repr == Representation::Focal) {
        if (t.focal_method.empty()) bad("focal test without focal method");
        if (n >= 1) {
            const Statement& f = t.stmts[n - 1];
            if (t.focal_method == "constructor") {
                if (f.kind != Statement::Kind::Constructor)
                    bad("focal statement is not the constructor call");
            } else {
                if (f.kind != Statement::Kind::Method)
                    bad("focal statement is not a method call");
                else if (f.method != t.focal_method)
                    bad("focal statement calls '" + f.method + "', expected '" + t.focal_method + "'");
                if (n < 2) bad("focal method test needs a constructed receiver");
            }
        }
    } else if (!t.focal_method.empty()) {
        bad("baseline test carries a focal method");
    }

    return problems;
}

}  // namespace srgen
