#include "srgen/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srgen {

namespace {

// Visits every reference slot of a statement with the kind it must hold.
template <typename Fn>
void for_each_ref(Statement& s, const SubjectUnit& unit, Fn fn) {
    switch (s.kind) {
        case Statement::Kind::Primitive:
            break;
        case Statement::Kind::Constructor: {
            const MethodDecl& ctor = unit.constructors.front();
            for (size_t i = 0; i < s.args.size(); ++i) fn(s.args[i], ctor.params[i].kind, false);
            break;
        }
        case Statement::Kind::Method: {
            const MethodDecl* m = unit.find_method(s.method);
            fn(s.receiver, ValueKind::UnitRef, true);
            for (size_t i = 0; i < s.args.size(); ++i) fn(s.args[i], m->params[i].kind, false);
            break;
        }
        case Statement::Kind::Field:
            fn(s.receiver, ValueKind::UnitRef, true);
            break;
        case Statement::Kind::Assignment:
            fn(s.source, s.defined, false);
            break;
    }
}

// Inserts at pos and shifts references of the statements behind it.
void insert_at(std::vector<Statement>& v, int pos, Statement s) {
    v.insert(v.begin() + pos, std::move(s));
    for (size_t i = pos + 1; i < v.size(); ++i) {
        Statement& st = v[i];
        auto shift = [&](int& r) {
            if (r >= pos) ++r;
        };
        if (st.receiver >= 0) shift(st.receiver);
        if (st.source >= 0) shift(st.source);
        for (int& a : st.args) shift(a);
    }
}

// Removes at pos; references to it dangle (-1) for repair to resolve.
void erase_at(std::vector<Statement>& v, int pos) {
    v.erase(v.begin() + pos);
    for (size_t i = pos; i < v.size(); ++i) {
        Statement& st = v[i];
        auto fix = [&](int& r) {
            if (r == pos)
                r = -1;
            else if (r > pos)
                --r;
        };
        if (st.receiver >= -1) fix(st.receiver);
        if (st.source >= -1) fix(st.source);
        for (int& a : st.args) fix(a);
    }
}

std::vector<int> vars_of_kind(const std::vector<Statement>& v, int before, ValueKind kind) {
    std::vector<int> out;
    for (int i = 0; i < before; ++i)
        if (v[i].defines() && v[i].defined == kind) out.push_back(i);
    return out;
}

Statement make_primitive(ValueKind kind, Rng& rng) {
    Statement s;
    s.kind = Statement::Kind::Primitive;
    s.defined = kind;
    s.literal = sample_primitive(kind, rng);
    return s;
}

// Guarantees a variable of `kind` exists before `pos`, inserting fresh
// statements there when needed. Advances pos past insertions. Returns the
// variable index, or -1 when construction is impossible.
int ensure_var(std::vector<Statement>& v, int& pos, ValueKind kind, const SubjectInfo& info,
               Rng& rng, double reuse_prob) {
    std::vector<int> existing = vars_of_kind(v, pos, kind);
    if (!existing.empty() && rng.chance(reuse_prob)) return existing[rng.index(existing.size())];

    if (kind == ValueKind::UnitRef) {
        const MethodDecl& ctor = info.unit().constructors.front();
        Statement c;
        c.kind = Statement::Kind::Constructor;
        c.defined = ValueKind::UnitRef;
        for (auto& p : ctor.params) {
            if (p.kind == ValueKind::UnitRef) {
                std::vector<int> inst = vars_of_kind(v, pos, ValueKind::UnitRef);
                if (inst.empty()) {
                    if (!existing.empty()) return existing[rng.index(existing.size())];
                    return -1;
                }
                c.args.push_back(inst[rng.index(inst.size())]);
            } else {
                insert_at(v, pos, make_primitive(p.kind, rng));
                c.args.push_back(pos);
                ++pos;
            }
        }
        insert_at(v, pos, std::move(c));
        return pos++;
    }

    insert_at(v, pos, make_primitive(kind, rng));
    return pos++;
}

bool insert_method_call(std::vector<Statement>& v, int& pos, const MethodDecl& m,
                        const SubjectInfo& info, Rng& rng, double recv_reuse, double arg_reuse) {
    int recv = ensure_var(v, pos, ValueKind::UnitRef, info, rng, recv_reuse);
    if (recv < 0) return false;
    Statement s;
    s.kind = Statement::Kind::Method;
    s.method = m.name;
    s.defined = m.return_kind;
    s.receiver = recv;
    for (auto& p : m.params) {
        int a = ensure_var(v, pos, p.kind, info, rng, arg_reuse);
        if (a < 0) return false;
        s.args.push_back(a);
    }
    insert_at(v, pos, std::move(s));
    ++pos;
    return true;
}

bool insert_random_statement(std::vector<Statement>& v, int pos, const SubjectInfo& info,
                             Rng& rng) {
    const SubjectUnit& unit = info.unit();
    std::vector<std::string> pub_fields;
    for (auto& f : unit.fields)
        if (f.is_public) pub_fields.push_back(f.name);
    bool can_assign = false;
    for (int i = 0; i < pos; ++i)
        if (v[i].defines()) can_assign = true;

    // weighted pick: method 50, constructor 15, primitive 15, field 10, assignment 10
    int total = 0;
    int w_method = unit.methods.empty() ? 0 : 50;
    int w_ctor = 15;
    int w_prim = 15;
    int w_field = pub_fields.empty() ? 0 : 10;
    int w_assign = can_assign ? 10 : 0;
    total = w_method + w_ctor + w_prim + w_field + w_assign;
    int pick = static_cast<int>(rng.uniform_int(0, total - 1));

    int p = pos;
    if ((pick -= w_method) < 0) {
        const MethodDecl& m = unit.methods[rng.index(unit.methods.size())];
        return insert_method_call(v, p, m, info, rng, 0.8, 0.5);
    }
    if ((pick -= w_ctor) < 0) return ensure_var(v, p, ValueKind::UnitRef, info, rng, 0.0) >= 0;
    if ((pick -= w_prim) < 0) {
        static const ValueKind kinds[] = {ValueKind::Int, ValueKind::Float, ValueKind::Bool,
                                          ValueKind::Text};
        insert_at(v, p, make_primitive(kinds[rng.index(4)], rng));
        return true;
    }
    if ((pick -= w_field) < 0) {
        int recv = ensure_var(v, p, ValueKind::UnitRef, info, rng, 0.8);
        if (recv < 0) return false;
        Statement s;
        s.kind = Statement::Kind::Field;
        s.field = pub_fields[rng.index(pub_fields.size())];
        s.defined = unit.find_field(s.field)->kind;
        s.receiver = recv;
        insert_at(v, p, std::move(s));
        return true;
    }
    // assignment: copy an existing variable
    std::vector<int> defs;
    for (int i = 0; i < p; ++i)
        if (v[i].defines()) defs.push_back(i);
    int src = defs[rng.index(defs.size())];
    Statement s;
    s.kind = Statement::Kind::Assignment;
    s.source = src;
    s.defined = v[src].defined;
    insert_at(v, p, std::move(s));
    return true;
}

void perturb(Value& v, Rng& rng) {
    switch (v.kind()) {
        case ValueKind::Int: {
            int64_t delta = rng.uniform_int(1, 10);
            if (rng.chance(0.5)) delta = -delta;
            v = Value::of_int(v.as_int() + delta);
            break;
        }
        case ValueKind::Float: {
            double old = v.as_float();
            double nv = old;
            for (int tries = 0; tries < 8 && nv == old; ++tries)
                nv = old + rng.gaussian() * std::max(1.0, std::fabs(old));
            nv = std::clamp(nv, -1e12, 1e12);
            v = Value::of_float(nv);
            break;
        }
        case ValueKind::Bool:
            v = Value::of_bool(!v.as_bool());
            break;
        case ValueKind::Text: {
            std::string s = v.as_text();
            if (s.empty()) {
                s.insert(s.begin(), static_cast<char>('a' + rng.index(26)));
            } else {
                switch (rng.index(3)) {
                    case 0:
                        s.insert(s.begin() + rng.index(s.size() + 1),
                                 static_cast<char>('a' + rng.index(26)));
                        break;
                    case 1:
                        s.erase(s.begin() + rng.index(s.size()));
                        break;
                    default: {
                        size_t at = rng.index(s.size());
                        char c = static_cast<char>('a' + rng.index(26));
                        if (c == s[at]) c = c == 'z' ? 'a' : c + 1;
                        s[at] = c;
                        break;
                    }
                }
            }
            v = Value::of_text(std::move(s));
            break;
        }
        default:
            break;
    }
}

// Backbone of repair: re-emit statements front to back, translating old
// references through the remap and rebinding or dropping what no longer
// resolves.
struct RepairPass {
    const SubjectInfo& info;
    const GenConfig& cfg;
    Rng& rng;
    std::vector<Statement> out;

    int earliest_compatible(ValueKind kind) const {
        for (size_t j = 0; j < out.size(); ++j)
            if (out[j].defines() && out[j].defined == kind) return static_cast<int>(j);
        return -1;
    }

    // Appends a fresh variable of `kind` to `out`; -1 when impossible.
    int append_fresh(ValueKind kind) {
        if (kind == ValueKind::UnitRef) {
            const MethodDecl& ctor = info.unit().constructors.front();
            Statement c;
            c.kind = Statement::Kind::Constructor;
            c.defined = ValueKind::UnitRef;
            for (auto& p : ctor.params) {
                if (p.kind == ValueKind::UnitRef) {
                    int reuse = earliest_compatible(ValueKind::UnitRef);
                    if (reuse < 0) return -1;
                    c.args.push_back(reuse);
                } else {
                    out.push_back(make_primitive(p.kind, rng));
                    c.args.push_back(static_cast<int>(out.size()) - 1);
                }
            }
            out.push_back(std::move(c));
            return static_cast<int>(out.size()) - 1;
        }
        out.push_back(make_primitive(kind, rng));
        return static_cast<int>(out.size()) - 1;
    }

    bool payload_valid(const Statement& s) const {
        const SubjectUnit& unit = info.unit();
        switch (s.kind) {
            case Statement::Kind::Primitive:
                return s.literal.kind() == s.defined;
            case Statement::Kind::Constructor:
                return s.defined == ValueKind::UnitRef &&
                       s.args.size() == unit.constructors.front().params.size();
            case Statement::Kind::Method: {
                const MethodDecl* m = unit.find_method(s.method);
                return m && !m->is_ctor && s.defined == m->return_kind &&
                       s.args.size() == m->params.size();
            }
            case Statement::Kind::Field: {
                const FieldDecl* f = unit.find_field(s.field);
                return f && f->is_public && s.defined == f->kind;
            }
            case Statement::Kind::Assignment:
                return s.defined != ValueKind::None;
        }
        return false;
    }

    // Returns false when the statement must be dropped.
    bool fix(Statement& s, const std::vector<int>& remap, bool is_focal) {
        if (!payload_valid(s)) return false;
        bool ok = true;
        for_each_ref(s, info.unit(), [&](int& r, ValueKind kind, bool /*recv*/) {
            if (!ok && !is_focal) return;
            int mapped = -1;
            if (r >= 0 && r < static_cast<int>(remap.size())) mapped = remap[r];
            if (mapped >= 0 && out[mapped].defines() && out[mapped].defined == kind) {
                r = mapped;
                return;
            }
            int bind = earliest_compatible(kind);
            if (bind < 0 && is_focal) bind = append_fresh(kind);
            if (bind < 0) {
                ok = false;
                return;
            }
            r = bind;
        });
        return ok || is_focal;
    }
};

// Drops trailing statements (never the focal one) until the test fits the
// length cap, taking only statements nothing later refers to. If every
// non-focal statement is referenced the test collapses to the focal
// statement's own dependency chain.
void enforce_cap(TestCase& t, const SubjectInfo& info, const GenConfig& cfg, Rng& rng) {
    while (t.size() > cfg.max_len) {
        int focal = t.repr == Representation::Focal ? t.size() - 1 : -1;
        std::vector<bool> referenced(t.stmts.size(), false);
        for (size_t i = 0; i < t.stmts.size(); ++i) {
            for_each_ref(t.stmts[i], info.unit(), [&](int& r, ValueKind, bool) {
                if (r >= 0) referenced[r] = true;
            });
        }
        int victim = -1;
        for (int i = t.size() - 1; i >= 0; --i) {
            if (i == focal) continue;
            if (!referenced[i]) {
                victim = i;
                break;
            }
        }
        if (victim >= 0) {
            erase_at(t.stmts, victim);
            continue;
        }
        if (focal < 0) {
            erase_at(t.stmts, t.size() - 1);
            continue;
        }
        // keep the focal statement and its backward dependency closure
        std::vector<bool> keep(t.stmts.size(), false);
        std::vector<int> work{focal};
        keep[focal] = true;
        while (!work.empty()) {
            int i = work.back();
            work.pop_back();
            for_each_ref(t.stmts[i], info.unit(), [&](int& r, ValueKind, bool) {
                if (r >= 0 && !keep[r]) {
                    keep[r] = true;
                    work.push_back(r);
                }
            });
        }
        TestCase compact;
        compact.repr = t.repr;
        compact.focal_method = t.focal_method;
        std::vector<int> remap(t.stmts.size(), -1);
        for (int i = 0; i < t.size(); ++i) {
            if (!keep[i]) continue;
            Statement s = t.stmts[i];
            for_each_ref(s, info.unit(), [&](int& r, ValueKind, bool) {
                if (r >= 0) r = remap[r];
            });
            remap[i] = compact.size();
            compact.stmts.push_back(std::move(s));
        }
        t = std::move(compact);
        (void)rng;
        break;
    }
}

}  // namespace

Value sample_primitive(ValueKind kind, Rng& rng) {
    switch (kind) {
        case ValueKind::Int: return Value::of_int(rng.uniform_int(-100, 100));
        case ValueKind::Float:
            return Value::of_float(std::round(rng.uniform_real(-100.0, 100.0) * 100.0) / 100.0);
        case ValueKind::Bool: return Value::of_bool(rng.chance(0.5));
        case ValueKind::Text: {
            int len = static_cast<int>(rng.uniform_int(0, 8));
            std::string s;
            for (int i = 0; i < len; ++i) s += static_cast<char>('a' + rng.index(26));
            return Value::of_text(std::move(s));
        }
        default: throw std::logic_error("cannot sample this kind");
    }
}

TestCase repair(const TestCase& t0, const SubjectInfo& info, const GenConfig& cfg, Rng& rng) {
    TestCase t;
    t.repr = t0.repr;
    t.focal_method = t0.focal_method;

    RepairPass pass{info, cfg, rng, {}};
    std::vector<int> remap(t0.stmts.size(), -1);
    int n0 = t0.size();
    for (int i = 0; i < n0; ++i) {
        Statement s = t0.stmts[i];
        bool is_focal = t0.repr == Representation::Focal && i == n0 - 1;
        if (!pass.fix(s, remap, is_focal)) continue;
        remap[i] = static_cast<int>(pass.out.size());
        pass.out.push_back(std::move(s));
    }
    t.stmts = std::move(pass.out);

    if (t.repr == Representation::Baseline && t.stmts.empty()) {
        int pos = 0;
        ensure_var(t.stmts, pos, ValueKind::UnitRef, info, rng, 0.0);
    }
    enforce_cap(t, info, cfg, rng);
    return t;
}

TestCase random_test(const SubjectInfo& info, Representation repr, int target_goal,
                     const GenConfig& cfg, Rng& rng) {
    TestCase t;
    t.repr = repr;

    if (repr == Representation::Focal) {
        const CoverageGoal& g = info.goals()[target_goal];
        t.focal_method = g.method;
        int setup = static_cast<int>(rng.uniform_int(0, std::max(0, cfg.init_len - 2)));
        for (int i = 0; i < setup && t.size() < cfg.max_len - 6; ++i)
            insert_random_statement(t.stmts, t.size(), info, rng);

        int pos = t.size();
        if (g.method == "constructor") {
            const MethodDecl& ctor = info.unit().constructors.front();
            Statement c;
            c.kind = Statement::Kind::Constructor;
            c.defined = ValueKind::UnitRef;
            bool ok = true;
            for (auto& p : ctor.params) {
                if (p.kind == ValueKind::UnitRef) {
                    int a = ensure_var(t.stmts, pos, ValueKind::UnitRef, info, rng, 1.0);
                    if (a < 0) ok = false;
                    c.args.push_back(a);
                } else {
                    insert_at(t.stmts, pos, make_primitive(p.kind, rng));
                    c.args.push_back(pos);
                    ++pos;
                }
            }
            if (ok) insert_at(t.stmts, pos, std::move(c));
        } else {
            const MethodDecl& m = *info.unit().find_method(g.method);
            int recv = ensure_var(t.stmts, pos, ValueKind::UnitRef, info, rng, 0.5);
            if (recv >= 0) {
                Statement s;
                s.kind = Statement::Kind::Method;
                s.method = m.name;
                s.defined = m.return_kind;
                s.receiver = recv;
                bool ok = true;
                for (auto& p : m.params) {
                    int a;
                    if (p.kind == ValueKind::UnitRef) {
                        a = ensure_var(t.stmts, pos, p.kind, info, rng, 0.5);
                    } else {
                        insert_at(t.stmts, pos, make_primitive(p.kind, rng));
                        a = pos++;
                    }
                    if (a < 0) ok = false;
                    s.args.push_back(a);
                }
                if (ok) insert_at(t.stmts, pos, std::move(s));
            }
        }
        return repair(t, info, cfg, rng);
    }

    int target_len = static_cast<int>(rng.uniform_int(2, std::max(2, cfg.init_len)));
    for (int attempts = 0; t.size() < target_len && attempts < 4 * target_len; ++attempts)
        insert_random_statement(t.stmts, t.size(), info, rng);
    return repair(t, info, cfg, rng);
}

std::pair<TestCase, TestCase> crossover_at(const TestCase& p1, const TestCase& p2, int cut1,
                                           int cut2, const SubjectInfo& info, const GenConfig& cfg,
                                           Rng& rng) {
    if (p1.repr != p2.repr) throw std::invalid_argument("crossover needs matching representations");

    auto copy_range = [](const TestCase& src, int from, int to, int base,
                         std::vector<Statement>& dst) {
        // statements [from, to) of src appended at index base of dst;
        // references outside the copied window dangle
        for (int i = from; i < to; ++i) {
            Statement s = src.stmts[i];
            auto relink = [&](int& r) {
                if (r < 0) return;
                if (r >= from && r < i)
                    r = r - from + base;
                else
                    r = -1;
            };
            if (s.receiver >= -1) relink(s.receiver);
            if (s.source >= -1) relink(s.source);
            for (int& a : s.args) relink(a);
            dst.push_back(std::move(s));
        }
    };

    auto splice = [&](const TestCase& head, int cut_a, const TestCase& tail, int cut_b,
                      bool focal) {
        TestCase child;
        child.repr = head.repr;
        child.focal_method = head.focal_method;
        int head_end = cut_a;
        for (int i = 0; i < head_end; ++i) child.stmts.push_back(head.stmts[i]);
        int tail_end = focal ? tail.size() - 1 : tail.size();
        copy_range(tail, cut_b, tail_end, head_end, child.stmts);
        if (focal) {
            // keep the head parent's focal statement; its references into
            // the head prefix survive, the rest dangle for repair
            Statement f = head.stmts[head.size() - 1];
            auto relink = [&](int& r) {
                if (r < 0 || r >= head_end) r = -1;
            };
            if (f.receiver >= -1) relink(f.receiver);
            if (f.source >= -1) relink(f.source);
            for (int& a : f.args) relink(a);
            child.stmts.push_back(std::move(f));
        }
        // pre-repair cap: drop setup from the spliced tail side
        int cap = cfg.max_len;
        while (child.size() > cap) {
            int at = focal ? child.size() - 2 : child.size() - 1;
            if (at < 0) break;
            erase_at(child.stmts, at);
        }
        return repair(child, info, cfg, rng);
    };

    bool focal = p1.repr == Representation::Focal;
    TestCase c1 = splice(p1, cut1, p2, cut2, focal);
    TestCase c2 = splice(p2, cut2, p1, cut1, focal);
    return {std::move(c1), std::move(c2)};
}

std::pair<TestCase, TestCase> crossover(const TestCase& p1, const TestCase& p2,
                                        const SubjectInfo& info, const GenConfig& cfg, Rng& rng) {
    if (p1.repr != p2.repr) throw std::invalid_argument("crossover needs matching representations");
    int setup = p1.repr == Representation::Focal ? 1 : 0;
    int a = static_cast<int>(rng.uniform_int(0, p1.size() - setup));
    int b = static_cast<int>(rng.uniform_int(0, p2.size() - setup));
    return crossover_at(p1, p2, a, b, info, cfg, rng);
}

TestCase mutate(const TestCase& t0, const SubjectInfo& info, const GenConfig& cfg, Rng& rng) {
    TestCase t = t0;
    bool focal = t.repr == Representation::Focal;

    // delete
    {
        int n = t.size();
        std::vector<int> doomed;
        for (int i = 0; i < n; ++i) {
            if (focal && i == n - 1) continue;
            if (rng.chance(1.0 / n)) doomed.push_back(i);
        }
        for (int k = static_cast<int>(doomed.size()) - 1; k >= 0; --k) erase_at(t.stmts, doomed[k]);
    }

    // change
    {
        int n = t.size();
        for (int i = 0; i < n; ++i) {
            if (!rng.chance(1.0 / n)) continue;
            Statement& s = t.stmts[i];
            bool focal_stmt = focal && i == n - 1;
            auto rebind = [&](int& r, ValueKind kind) {
                std::vector<int> cand = vars_of_kind(t.stmts, i, kind);
                if (!cand.empty()) r = cand[rng.index(cand.size())];
            };
            switch (s.kind) {
                case Statement::Kind::Primitive:
                    perturb(s.literal, rng);
                    break;
                case Statement::Kind::Constructor: {
                    const MethodDecl& ctor = info.unit().constructors.front();
                    for (size_t k = 0; k < s.args.size(); ++k) rebind(s.args[k], ctor.params[k].kind);
                    break;
                }
                case Statement::Kind::Method: {
                    const MethodDecl* m = info.unit().find_method(s.method);
                    if (!focal_stmt) rebind(s.receiver, ValueKind::UnitRef);
                    for (size_t k = 0; k < s.args.size(); ++k) rebind(s.args[k], m->params[k].kind);
                    break;
                }
                case Statement::Kind::Field:
                    rebind(s.receiver, ValueKind::UnitRef);
                    break;
                case Statement::Kind::Assignment:
                    rebind(s.source, s.defined);
                    break;
            }
        }
    }

    // insert
    {
        double p = 0.5;
        while (rng.chance(p) && t.size() < cfg.max_len) {
            int max_pos = focal ? std::max(0, t.size() - 1) : t.size();
            int pos = static_cast<int>(rng.uniform_int(0, max_pos));
            insert_random_statement(t.stmts, pos, info, rng);
            p *= 0.5;
        }
    }

    return repair(t, info, cfg, rng);
}

}  // namespace srgen
