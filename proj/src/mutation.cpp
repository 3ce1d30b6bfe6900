#include "srgen/mutation.hpp"

#include <cmath>
#include <stdexcept>

#include "srgen/parser.hpp"

namespace srgen {

const char* mutop_name(MutOp op) {
    switch (op) {
        case MutOp::AOR: return "AOR";
        case MutOp::ROR: return "ROR";
        case MutOp::LCR: return "LCR";
        case MutOp::CRP: return "CRP";
        case MutOp::NEG: return "NEG";
    }
    return "?";
}

namespace {

const BinOp kArithTable[] = {BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::Mod};
const BinOp kCompTable[] = {BinOp::Lt, BinOp::Le, BinOp::Gt, BinOp::Ge, BinOp::Eq, BinOp::Ne};

struct MutantBuilder {
    std::vector<Mutant>& out;
    const std::string& method;

    void add(MutOp op, const Expr* node, const Stmt* stmt, BinOp new_bin, int crp_variant,
             std::string description) {
        Mutant m;
        m.id = static_cast<int>(out.size());
        m.method = method;
        m.node_id = node ? node->node_id : stmt->node_id;
        m.op = op;
        m.new_bin = new_bin;
        m.crp_variant = crp_variant;
        m.description = std::move(description);
        m.pos = node ? node->pos : stmt->pos;
        out.push_back(std::move(m));
    }

    void visit_expr(const Expr& e) {
        switch (e.tag) {
            case Expr::Tag::Binary: {
                if (is_arith(e.bin)) {
                    for (BinOp op : kArithTable) {
                        if (op == e.bin) continue;
                        add(MutOp::AOR, &e, nullptr, op, 0,
                            std::string(binop_text(e.bin)) + " -> " + binop_text(op));
                    }
                } else if (is_comparison(e.bin)) {
                    bool numeric = e.lhs->type == ValueKind::Int || e.lhs->type == ValueKind::Float;
                    for (BinOp op : kCompTable) {
                        if (op == e.bin) continue;
                        if (!numeric && !is_equality(op)) continue;  // kind-preserving only
                        add(MutOp::ROR, &e, nullptr, op, 0,
                            std::string(binop_text(e.bin)) + " -> " + binop_text(op));
                    }
                } else {
                    BinOp other = e.bin == BinOp::And ? BinOp::Or : BinOp::And;
                    add(MutOp::LCR, &e, nullptr, other, 0,
                        std::string(binop_text(e.bin)) + " -> " + binop_text(other));
                }
                visit_expr(*e.lhs);
                visit_expr(*e.rhs);
                break;
            }
            case Expr::Tag::Unary:
                visit_expr(*e.operand);
                break;
            case Expr::Tag::SelfCall:
            case Expr::Tag::ParamCall:
                for (auto& a : e.args) visit_expr(*a);
                break;
            case Expr::Tag::IntLit: {
                int64_t c = e.int_val;
                add(MutOp::CRP, &e, nullptr, BinOp::Add, 0,
                    std::to_string(c) + " -> " + std::to_string(c + 1));
                add(MutOp::CRP, &e, nullptr, BinOp::Add, 1,
                    std::to_string(c) + " -> " + std::to_string(c - 1));
                if (c != 0)
                    add(MutOp::CRP, &e, nullptr, BinOp::Add, 2, std::to_string(c) + " -> 0");
                break;
            }
            case Expr::Tag::FloatLit: {
                double c = e.float_val;
                add(MutOp::CRP, &e, nullptr, BinOp::Add, 0,
                    format_float(c) + " -> " + format_float(c + 1.0));
                add(MutOp::CRP, &e, nullptr, BinOp::Add, 1,
                    format_float(c) + " -> " + format_float(c - 1.0));
                if (c != 0.0)
                    add(MutOp::CRP, &e, nullptr, BinOp::Add, 2, format_float(c) + " -> 0.0");
                break;
            }
            case Expr::Tag::BoolLit:
                add(MutOp::CRP, &e, nullptr, BinOp::Add, 2,
                    e.bool_val ? "true -> false" : "false -> true");
                break;
            default:
                break;
        }
    }

    void visit_stmt(const Stmt& s) {
        if (s.tag == Stmt::Tag::If || s.tag == Stmt::Tag::While) {
            add(MutOp::NEG, nullptr, &s, BinOp::Add, 0, "negate condition");
        }
        if (s.value) visit_expr(*s.value);
        for (auto& c : s.then_body) visit_stmt(*c);
        for (auto& c : s.else_body) visit_stmt(*c);
    }
};

Expr* find_expr(Expr& e, int node_id) {
    if (e.node_id == node_id) return &e;
    Expr* found = nullptr;
    auto probe = [&](Expr* child) {
        if (!found && child) found = find_expr(*child, node_id);
    };
    probe(e.lhs.get());
    probe(e.rhs.get());
    probe(e.operand.get());
    for (auto& a : e.args)
        if (!found) found = find_expr(*a, node_id);
    return found;
}

Stmt* find_stmt(std::vector<StmtPtr>& body, int node_id) {
    for (auto& s : body) {
        if (s->node_id == node_id) return s.get();
        if (Stmt* f = find_stmt(s->then_body, node_id)) return f;
        if (Stmt* f = find_stmt(s->else_body, node_id)) return f;
    }
    return nullptr;
}

Expr* find_expr_in(std::vector<StmtPtr>& body, int node_id) {
    for (auto& s : body) {
        if (s->value)
            if (Expr* f = find_expr(*s->value, node_id)) return f;
        if (Expr* f = find_expr_in(s->then_body, node_id)) return f;
        if (Expr* f = find_expr_in(s->else_body, node_id)) return f;
    }
    return nullptr;
}

}  // namespace

std::vector<Mutant> generate_mutants(const SubjectUnit& unit) {
    std::vector<Mutant> out;
    for (const MethodDecl* m : unit.decls()) {
        MutantBuilder b{out, m->name};
        for (auto& s : m->body) b.visit_stmt(*s);
    }
    return out;
}

SubjectUnit apply_mutant(const SubjectUnit& unit, const Mutant& m) {
    SubjectUnit copy = clone(unit);
    std::vector<MethodDecl*> decls;
    for (auto& d : copy.constructors) decls.push_back(&d);
    for (auto& d : copy.methods) decls.push_back(&d);

    MethodDecl* owner = nullptr;
    for (MethodDecl* d : decls)
        if (d->name == m.method) owner = d;
    if (!owner) throw std::logic_error("mutant names unknown method");

    if (m.op == MutOp::NEG) {
        Stmt* s = find_stmt(owner->body, m.node_id);
        if (!s) throw std::logic_error("mutant location not found");
        auto neg = std::make_unique<Expr>();
        neg->tag = Expr::Tag::Unary;
        neg->un = UnOp::Not;
        neg->type = ValueKind::Bool;
        neg->pos = s->value->pos;
        neg->operand = std::move(s->value);
        s->value = std::move(neg);
        return copy;
    }

    Expr* e = find_expr_in(owner->body, m.node_id);
    if (!e) throw std::logic_error("mutant location not found");
    switch (m.op) {
        case MutOp::AOR:
        case MutOp::ROR:
        case MutOp::LCR:
            e->bin = m.new_bin;
            break;
        case MutOp::CRP:
            if (e->tag == Expr::Tag::IntLit) {
                e->int_val = m.crp_variant == 0 ? e->int_val + 1
                             : m.crp_variant == 1 ? e->int_val - 1
                                                  : 0;
            } else if (e->tag == Expr::Tag::FloatLit) {
                e->float_val = m.crp_variant == 0 ? e->float_val + 1.0
                               : m.crp_variant == 1 ? e->float_val - 1.0
                                                    : 0.0;
            } else {
                e->bool_val = !e->bool_val;
            }
            break;
        default:
            throw std::logic_error("bad mutant");
    }
    return copy;
}

// ---------------------------------------------------------------------------
// kill analysis
// ---------------------------------------------------------------------------

KillMatrix::KillMatrix(int n_tests, const std::vector<int>& assertions_per_test, int n_mutants)
    : n_mutants_(n_mutants) {
    cells_.resize(n_tests);
    for (int t = 0; t < n_tests; ++t)
        cells_[t].assign(assertions_per_test[t], std::vector<Cell>(n_mutants, Cell::Survives));
    flags_.assign(n_mutants, MutantFlags{});
}

std::vector<int> KillMatrix::kills_of(int test, int assertion) const {
    std::vector<int> out;
    const auto& row = cells_[test][assertion];
    for (int m = 0; m < n_mutants_; ++m)
        if (row[m] == Cell::Kills) out.push_back(m);
    return out;
}

std::vector<bool> KillMatrix::flags_timeout() const {
    std::vector<bool> out;
    for (auto& f : flags_) out.push_back(f.timeout);
    return out;
}

std::vector<bool> KillMatrix::flags_div() const {
    std::vector<bool> out;
    for (auto& f : flags_) out.push_back(f.pre_divergence);
    return out;
}

bool observation_mismatch(const Observation& expected, const Observation& actual, double tolerance) {
    if (expected.is_exception != actual.is_exception) return true;
    if (expected.is_exception) return expected.exception_text != actual.exception_text;
    const Value& a = expected.value;
    const Value& b = actual.value;
    if (a.kind() != b.kind()) return true;
    if (a.kind() == ValueKind::Float) {
        double x = a.as_float(), y = b.as_float();
        if (std::isnan(x) && std::isnan(y)) return false;
        return !(std::fabs(x - y) <= tolerance);
    }
    return !(a == b);
}

KillMatrix run_kill_analysis(const SubjectUnit& unit, const std::vector<TestUnderAnalysis>& tests,
                             const std::vector<Mutant>& mutants, const ExecLimits& limits) {
    std::vector<int> per_test;
    for (auto& t : tests) per_test.push_back(static_cast<int>(t.expected.size()));
    KillMatrix matrix(static_cast<int>(tests.size()), per_test, static_cast<int>(mutants.size()));

    for (size_t mi = 0; mi < mutants.size(); ++mi) {
        SubjectUnit mutated = apply_mutant(unit, mutants[mi]);
        SubjectInfo info_m(mutated);
        for (size_t ti = 0; ti < tests.size(); ++ti) {
            const TestUnderAnalysis& t = tests[ti];
            if (t.expected.empty()) continue;
            ExecResult run = execute_test(info_m, *t.test, limits);
            std::vector<Observation> actual = harvest_observations(info_m, *t.test, run, limits);
            bool any_divergent = false;
            for (size_t ai = 0; ai < t.expected.size(); ++ai) {
                const Observation* found = nullptr;
                for (auto& o : actual)
                    if (o.same_point(t.expected[ai])) {
                        found = &o;
                        break;
                    }
                if (!found) {
                    matrix.set(static_cast<int>(ti), static_cast<int>(ai), static_cast<int>(mi),
                               KillMatrix::Cell::Divergent);
                    any_divergent = true;
                    continue;
                }
                bool kills = observation_mismatch(t.expected[ai], *found, t.tolerance[ai]);
                matrix.set(static_cast<int>(ti), static_cast<int>(ai), static_cast<int>(mi),
                           kills ? KillMatrix::Cell::Kills : KillMatrix::Cell::Survives);
            }
            if (run.trace.timeout) matrix.flag(static_cast<int>(mi)).timeout = true;
            if (any_divergent) matrix.flag(static_cast<int>(mi)).pre_divergence = true;
        }
    }
    return matrix;
}

MutationScore mutation_score(const KillMatrix& matrix, const std::vector<std::vector<int>>& kept) {
    MutationScore s;
    s.total = matrix.mutant_count();
    if (s.total == 0) {
        s.score = 1.0;
        s.no_mutants = true;
        return s;
    }
    for (int m = 0; m < s.total; ++m) {
        // killed: a kept assertion detects it, its observation point became
        // unreachable (divergence before the point), or the run timed out
        bool killed = matrix.flags()[m].timeout;
        for (int t = 0; t < matrix.test_count() && !killed; ++t) {
            for (int a : kept[t]) {
                KillMatrix::Cell c = matrix.cell(t, a, m);
                if (c == KillMatrix::Cell::Kills || c == KillMatrix::Cell::Divergent) {
                    killed = true;
                    break;
                }
            }
        }
        if (killed) ++s.killed;
    }
    s.score = static_cast<double>(s.killed) / static_cast<double>(s.total);
    return s;
}

}  // namespace srgen
