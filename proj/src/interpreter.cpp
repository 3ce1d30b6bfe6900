#include "srgen/interpreter.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace srgen {

namespace {

constexpr double kK = 1.0;  // distance constant for taken-vs-missed outcomes

struct SubjectError {
    std::string text;
};
struct TimeoutSignal {};
struct ReturnSignal {
    Value value;
};

double dist_true_numeric(BinOp op, double a, double b) {
    switch (op) {
        case BinOp::Lt: return std::max(0.0, a - b + kK);
        case BinOp::Le: return std::max(0.0, a - b);
        case BinOp::Gt: return std::max(0.0, b - a + kK);
        case BinOp::Ge: return std::max(0.0, b - a);
        case BinOp::Eq: return std::fabs(a - b);
        case BinOp::Ne: return a == b ? kK : 0.0;
        default: throw std::logic_error("not a comparison");
    }
}

BinOp negate_comparison(BinOp op) {
    switch (op) {
        case BinOp::Lt: return BinOp::Ge;
        case BinOp::Le: return BinOp::Gt;
        case BinOp::Gt: return BinOp::Le;
        case BinOp::Ge: return BinOp::Lt;
        case BinOp::Eq: return BinOp::Ne;
        case BinOp::Ne: return BinOp::Eq;
        default: throw std::logic_error("not a comparison");
    }
}

int64_t wrap_add(int64_t a, int64_t b) {
    return static_cast<int64_t>(static_cast<uint64_t>(a) + static_cast<uint64_t>(b));
}
int64_t wrap_sub(int64_t a, int64_t b) {
    return static_cast<int64_t>(static_cast<uint64_t>(a) - static_cast<uint64_t>(b));
}
int64_t wrap_mul(int64_t a, int64_t b) {
    return static_cast<int64_t>(static_cast<uint64_t>(a) * static_cast<uint64_t>(b));
}

class Exec {
public:
    Exec(const SubjectInfo& info, const ExecLimits& limits, bool instrument)
        : info_(info), unit_(info.unit()), limits_(limits), instrument_(instrument) {
        if (instrument_) {
            trace_.covered_at.resize(info.goal_count());
            trace_.dists.resize(info.goal_count());
            trace_.entered_at.resize(info.method_count());
        }
    }

    ExecResult run(const TestCase& test) {
        trace_.outcomes.resize(test.stmts.size());
        vars_.resize(test.stmts.size());
        for (size_t i = 0; i < test.stmts.size(); ++i) {
            cur_stmt_ = static_cast<int>(i) + 1;
            try {
                Value v = exec_test_stmt(test.stmts[i]);
                trace_.outcomes[i] = {StmtOutcome::Tag::Normal, v, ""};
                if (test.stmts[i].defines()) vars_[i] = v;
            } catch (const SubjectError& e) {
                trace_.outcomes[i] = {StmtOutcome::Tag::Exception, Value::none(), e.text};
                break;
            } catch (const TimeoutSignal&) {
                trace_.outcomes[i] = {StmtOutcome::Tag::Exception, Value::none(), "timeout"};
                trace_.timeout = true;
                break;
            }
        }
        trace_.steps = steps_;
        return {std::move(trace_), std::move(vars_)};
    }

    // Inspector call on a finished run's state; budget is fresh and small.
    // Returns the value, or an exception/timeout text via the out-params.
    Value call_inspector(const InstanceRef& self, const MethodDecl& m, bool& threw,
                         std::string& error) {
        steps_ = 0;
        threw = false;
        try {
            return invoke(m, self, {}, 0);
        } catch (const SubjectError& e) {
            threw = true;
            error = e.text;
        } catch (const TimeoutSignal&) {
            threw = true;
            error = "timeout";
        }
        return Value::none();
    }

private:
    const SubjectInfo& info_;
    const SubjectUnit& unit_;
    ExecLimits limits_;
    bool instrument_;
    ExecTrace trace_;
    std::vector<std::optional<Value>> vars_;
    int64_t steps_ = 0;
    int cur_stmt_ = 0;

    struct Env {
        InstanceRef self;
        std::map<std::string, Value> names;
    };

    void step() {
        if (steps_ >= limits_.step_limit) throw TimeoutSignal{};
        ++steps_;
    }

    void record_entry(const MethodDecl& m) {
        if (!instrument_) return;
        uint16_t s = static_cast<uint16_t>(cur_stmt_);
        auto& v = trace_.entered_at[info_.method_index(m.name)];
        if (v.empty() || v.back() != s) v.push_back(s);
        auto& cov = trace_.covered_at[info_.entry_goal(m.name)];
        if (cov.empty() || cov.back() != s) cov.push_back(s);
    }

    void record_branch(int node_id, bool taken, double d_true, double d_false) {
        if (!instrument_) return;
        auto [tg, fg] = info_.branch_goals(node_id);
        uint16_t s = static_cast<uint16_t>(cur_stmt_);
        int covered_goal = taken ? tg : fg;
        auto& cov = trace_.covered_at[covered_goal];
        if (cov.empty() || cov.back() != s) cov.push_back(s);
        auto add_dist = [&](int goal, double d) {
            auto& v = trace_.dists[goal];
            if (!v.empty() && v.back().stmt == s) {
                if (d < v.back().dist) v.back().dist = d;
            } else {
                v.push_back({s, d});
            }
        };
        add_dist(tg, d_true);
        add_dist(fg, d_false);
    }

    Value exec_test_stmt(const Statement& s) {
        switch (s.kind) {
            case Statement::Kind::Primitive:
                return s.literal;
            case Statement::Kind::Constructor: {
                auto inst = std::make_shared<Instance>();
                for (auto& f : unit_.fields) inst->fields.push_back(Value::default_of(f.kind));
                std::vector<Value> args;
                for (int a : s.args) args.push_back(*vars_[a]);
                invoke(unit_.constructors.front(), inst, std::move(args), 0);
                return Value::of_ref(inst);
            }
            case Statement::Kind::Method: {
                const Value& recv = *vars_[s.receiver];
                const MethodDecl* m = unit_.find_method(s.method);
                if (!m) throw std::logic_error("statement names unknown method");
                std::vector<Value> args;
                for (int a : s.args) args.push_back(*vars_[a]);
                return invoke(*m, recv.as_ref(), std::move(args), 0);
            }
            case Statement::Kind::Field: {
                const Value& recv = *vars_[s.receiver];
                int idx = unit_.field_index(s.field);
                return recv.as_ref()->fields[idx];
            }
            case Statement::Kind::Assignment:
                return *vars_[s.source];
        }
        return Value::none();
    }

    Value invoke(const MethodDecl& m, const InstanceRef& self, std::vector<Value>&& args, int depth) {
        if (depth > limits_.depth_limit) throw TimeoutSignal{};
        step();
        record_entry(m);
        Env env;
        env.self = self;
        for (size_t i = 0; i < m.params.size(); ++i) env.names[m.params[i].name] = args[i];
        preinit_locals(m.body, env);
        try {
            for (auto& s : m.body) exec_stmt(*s, env, depth);
        } catch (ReturnSignal& r) {
            return std::move(r.value);
        }
        return Value::default_of(m.return_kind);
    }

    void preinit_locals(const std::vector<StmtPtr>& body, Env& env) {
        for (auto& s : body) {
            if (s->tag == Stmt::Tag::Local) env.names[s->name] = Value::default_of(s->declared);
            preinit_locals(s->then_body, env);
            preinit_locals(s->else_body, env);
        }
    }

    void exec_stmt(const Stmt& s, Env& env, int depth) {
        step();
        switch (s.tag) {
            case Stmt::Tag::Local:
            case Stmt::Tag::AssignLocal:
                env.names[s.name] = eval(*s.value, env, depth);
                break;
            case Stmt::Tag::AssignField: {
                Value v = eval(*s.value, env, depth);
                env.self->fields[unit_.field_index(s.name)] = std::move(v);
                break;
            }
            case Stmt::Tag::If: {
                Cond c = eval_cond(*s.value, env, depth);
                record_branch(s.node_id, c.value, c.d_true, c.d_false);
                const auto& body = c.value ? s.then_body : s.else_body;
                for (auto& st : body) exec_stmt(*st, env, depth);
                break;
            }
            case Stmt::Tag::While: {
                while (true) {
                    Cond c = eval_cond(*s.value, env, depth);
                    record_branch(s.node_id, c.value, c.d_true, c.d_false);
                    if (!c.value) break;
                    for (auto& st : s.then_body) exec_stmt(*st, env, depth);
                }
                break;
            }
            case Stmt::Tag::Return:
                throw ReturnSignal{s.value ? eval(*s.value, env, depth) : Value::none()};
            case Stmt::Tag::Throw:
                throw SubjectError{s.text};
            case Stmt::Tag::ExprStmt:
                eval(*s.value, env, depth);
                break;
        }
    }

    struct Cond {
        bool value;
        double d_true;
        double d_false;
    };

    // Conditions evaluate both operands of && and || so that both branch
    // distances are observable; the taken side of every leaf is 0.
    Cond eval_cond(const Expr& e, Env& env, int depth) {
        if (e.tag == Expr::Tag::Binary && is_logical(e.bin)) {
            step();
            Cond l = eval_cond(*e.lhs, env, depth);
            Cond r = eval_cond(*e.rhs, env, depth);
            if (e.bin == BinOp::And)
                return {l.value && r.value, l.d_true + r.d_true, std::min(l.d_false, r.d_false)};
            return {l.value || r.value, std::min(l.d_true, r.d_true), l.d_false + r.d_false};
        }
        if (e.tag == Expr::Tag::Unary && e.un == UnOp::Not) {
            step();
            Cond c = eval_cond(*e.operand, env, depth);
            return {!c.value, c.d_false, c.d_true};
        }
        if (e.tag == Expr::Tag::Binary && is_comparison(e.bin)) {
            step();
            Value a = eval(*e.lhs, env, depth);
            Value b = eval(*e.rhs, env, depth);
            bool v = compare(e.bin, a, b);
            double dt = v ? 0.0 : branch_distance(e.bin, a, b);
            double df = v ? branch_distance(negate_comparison(e.bin), a, b) : 0.0;
            return {v, dt, df};
        }
        Value v = eval(e, env, depth);
        bool b = v.as_bool();
        return {b, b ? 0.0 : kK, b ? kK : 0.0};
    }

    bool compare(BinOp op, const Value& a, const Value& b) {
        if (a.is_numeric() && b.is_numeric()) {
            if (a.kind() == ValueKind::Int && b.kind() == ValueKind::Int) {
                int64_t x = a.as_int(), y = b.as_int();
                switch (op) {
                    case BinOp::Lt: return x < y;
                    case BinOp::Le: return x <= y;
                    case BinOp::Gt: return x > y;
                    case BinOp::Ge: return x >= y;
                    case BinOp::Eq: return x == y;
                    default: return x != y;
                }
            }
            double x = a.numeric(), y = b.numeric();
            switch (op) {
                case BinOp::Lt: return x < y;
                case BinOp::Le: return x <= y;
                case BinOp::Gt: return x > y;
                case BinOp::Ge: return x >= y;
                case BinOp::Eq: return x == y;
                default: return x != y;
            }
        }
        // checker admits only same-kind bool/text equality here
        bool eq = a == b;
        return op == BinOp::Eq ? eq : !eq;
    }

    Value eval(const Expr& e, Env& env, int depth) {
        step();
        switch (e.tag) {
            case Expr::Tag::IntLit: return Value::of_int(e.int_val);
            case Expr::Tag::FloatLit: return Value::of_float(e.float_val);
            case Expr::Tag::BoolLit: return Value::of_bool(e.bool_val);
            case Expr::Tag::TextLit: return Value::of_text(e.text_val);
            case Expr::Tag::Name: return env.names.at(e.name);
            case Expr::Tag::FieldRead: return env.self->fields[unit_.field_index(e.name)];
            case Expr::Tag::SelfCall: {
                std::vector<Value> args;
                for (auto& a : e.args) args.push_back(eval(*a, env, depth));
                return invoke(*unit_.find_method(e.name), env.self, std::move(args), depth + 1);
            }
            case Expr::Tag::ParamCall: {
                Value recv = env.names.at(e.recv);
                if (!recv.as_ref()) throw SubjectError{"null reference"};
                std::vector<Value> args;
                for (auto& a : e.args) args.push_back(eval(*a, env, depth));
                return invoke(*unit_.find_method(e.name), recv.as_ref(), std::move(args), depth + 1);
            }
            case Expr::Tag::Binary: {
                if (is_logical(e.bin)) {
                    bool l = eval(*e.lhs, env, depth).as_bool();
                    bool r = eval(*e.rhs, env, depth).as_bool();
                    return Value::of_bool(e.bin == BinOp::And ? (l && r) : (l || r));
                }
                Value a = eval(*e.lhs, env, depth);
                Value b = eval(*e.rhs, env, depth);
                if (is_comparison(e.bin)) return Value::of_bool(compare(e.bin, a, b));
                return arith(e.bin, a, b);
            }
            case Expr::Tag::Unary: {
                Value v = eval(*e.operand, env, depth);
                if (e.un == UnOp::Not) return Value::of_bool(!v.as_bool());
                if (v.kind() == ValueKind::Int) return Value::of_int(wrap_sub(0, v.as_int()));
                return Value::of_float(-v.as_float());
            }
        }
        return Value::none();
    }

    Value arith(BinOp op, const Value& a, const Value& b) {
        if (a.kind() == ValueKind::Int && b.kind() == ValueKind::Int) {
            int64_t x = a.as_int(), y = b.as_int();
            switch (op) {
                case BinOp::Add: return Value::of_int(wrap_add(x, y));
                case BinOp::Sub: return Value::of_int(wrap_sub(x, y));
                case BinOp::Mul: return Value::of_int(wrap_mul(x, y));
                case BinOp::Div:
                    if (y == 0) throw SubjectError{"arith"};
                    if (y == -1) return Value::of_int(wrap_sub(0, x));
                    return Value::of_int(x / y);
                case BinOp::Mod:
                    if (y == 0) throw SubjectError{"arith"};
                    if (y == -1) return Value::of_int(0);
                    return Value::of_int(x % y);
                default: break;
            }
        }
        double x = a.numeric(), y = b.numeric();
        switch (op) {
            case BinOp::Add: return Value::of_float(x + y);
            case BinOp::Sub: return Value::of_float(x - y);
            case BinOp::Mul: return Value::of_float(x * y);
            case BinOp::Div: return Value::of_float(x / y);  // IEEE semantics for 0.0
            case BinOp::Mod:
                if (y == 0.0) throw SubjectError{"arith"};
                return Value::of_float(std::fmod(x, y));
            default: break;
        }
        throw std::logic_error("bad arithmetic operator");
    }
};

}  // namespace

double branch_distance(BinOp op, const Value& left, const Value& right) {
    if (!is_comparison(op)) throw std::logic_error("branch_distance needs a comparison");
    if (left.is_numeric() && right.is_numeric())
        return dist_true_numeric(op, left.numeric(), right.numeric());
    bool eq = left == right;
    if (op == BinOp::Eq) return eq ? 0.0 : kK;
    if (op == BinOp::Ne) return eq ? kK : 0.0;
    throw std::logic_error("ordering comparison on non-numeric values");
}

ExecResult execute_test(const SubjectInfo& info, const TestCase& test, const ExecLimits& limits) {
    Exec e(info, limits, true);
    return e.run(test);
}

// ---------------------------------------------------------------------------
// observation harvesting
// ---------------------------------------------------------------------------

namespace {

void harvest_inspectors(const SubjectInfo& info, const ExecResult& result,
                        const ExecLimits& limits, std::vector<Observation>& out) {
    auto inspectors = info.inspectors();
    if (inspectors.empty()) return;
    for (size_t i = 0; i < result.vars.size(); ++i) {
        if (!result.vars[i] || result.vars[i]->kind() != ValueKind::UnitRef) continue;
        const InstanceRef& inst = result.vars[i]->as_ref();
        if (!inst) continue;
        for (auto& name : inspectors) {
            Exec quiet(info, limits, false);
            bool threw = false;
            std::string error;
            Value v = quiet.call_inspector(inst, *info.unit().find_method(name), threw, error);
            Observation o;
            o.kind = Observation::Kind::InspectorValue;
            o.stmt_index = static_cast<int>(i) + 1;
            o.inspector = name;
            if (threw) {
                o.is_exception = true;
                o.exception_text = error;
            } else {
                o.value = v;
            }
            out.push_back(std::move(o));
        }
    }
}

}  // namespace

std::vector<Observation> harvest_observations(const SubjectInfo& info, const TestCase& test,
                                              const ExecResult& result, const ExecLimits& limits) {
    std::vector<Observation> out;
    if (result.trace.timeout) return out;  // no stable post-state to observe

    if (test.repr == Representation::Baseline) {
        for (size_t i = 0; i < test.stmts.size(); ++i) {
            const Statement& s = test.stmts[i];
            if (s.kind != Statement::Kind::Method || !s.defines()) continue;
            if (result.trace.outcomes[i].tag != StmtOutcome::Tag::Normal) continue;
            Observation o;
            o.kind = Observation::Kind::StatementReturn;
            o.stmt_index = static_cast<int>(i) + 1;
            o.value = result.trace.outcomes[i].value;
            out.push_back(std::move(o));
        }
        harvest_inspectors(info, result, limits, out);
        return out;
    }

    // focal: the last statement's return and exception status, then the
    // object state right after it
    int n = test.size();
    const StmtOutcome& focal = result.trace.outcomes[n - 1];
    if (focal.tag != StmtOutcome::Tag::Skipped) {
        const Statement& fs = test.stmts[n - 1];
        if (fs.kind == Statement::Kind::Method && fs.defines() &&
            focal.tag == StmtOutcome::Tag::Normal) {
            Observation o;
            o.kind = Observation::Kind::StatementReturn;
            o.stmt_index = n;
            o.value = focal.value;
            out.push_back(std::move(o));
        }
        Observation status;
        status.kind = Observation::Kind::ExceptionStatus;
        status.stmt_index = n;
        if (focal.tag == StmtOutcome::Tag::Exception) {
            status.is_exception = true;
            status.exception_text = focal.error;
        }
        out.push_back(std::move(status));
    }
    harvest_inspectors(info, result, limits, out);
    return out;
}

}  // namespace srgen
