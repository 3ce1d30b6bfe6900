#include "srgen/subject_info.hpp"

#include <stdexcept>

namespace srgen {

namespace {

void collect_calls(const Expr& e, std::set<std::string>& out) {
    switch (e.tag) {
        case Expr::Tag::SelfCall:
        case Expr::Tag::ParamCall:
            out.insert(e.name);
            for (auto& a : e.args) collect_calls(*a, out);
            break;
        case Expr::Tag::Binary:
            collect_calls(*e.lhs, out);
            collect_calls(*e.rhs, out);
            break;
        case Expr::Tag::Unary:
            collect_calls(*e.operand, out);
            break;
        default:
            break;
    }
}

void collect_calls(const std::vector<StmtPtr>& body, std::set<std::string>& out) {
    for (auto& s : body) {
        if (s->value) collect_calls(*s->value, out);
        collect_calls(s->then_body, out);
        collect_calls(s->else_body, out);
    }
}

}  // namespace

SubjectInfo::SubjectInfo(const SubjectUnit& unit) : unit_(&unit) {
    for (const MethodDecl* m : unit.decls()) {
        decls_.push_back(m);
        decl_names_.push_back(m->name);
        decl_index_[m->name] = static_cast<int>(decls_.size()) - 1;
        std::set<std::string> callees;
        collect_calls(m->body, callees);
        callees_[m->name] = std::move(callees);
    }

    // Goals: per declaration an entry goal, then a true/false pair per
    // conditional in AST preorder. A conditional nested under an outcome
    // block with no conditional in between hangs off that outcome in the
    // CDG; top-level conditionals are roots with depth 1.
    for (const MethodDecl* m : decls_) {
        int entry = static_cast<int>(goals_.size());
        entry_goal_[m->name] = entry;
        goals_.push_back({m->name + ":entry", m->name, GoalKind::MethodEntry, -1, 0, -1});

        auto walk = [&](auto&& self, const std::vector<StmtPtr>& body, int parent, int depth) -> void {
            for (auto& s : body) {
                if (s->tag == Stmt::Tag::If || s->tag == Stmt::Tag::While) {
                    int t = static_cast<int>(goals_.size());
                    std::string base = m->name + ":n" + std::to_string(s->node_id);
                    goals_.push_back({base + ":T", m->name, GoalKind::BranchTrue, s->node_id,
                                      depth, parent});
                    goals_.push_back({base + ":F", m->name, GoalKind::BranchFalse, s->node_id,
                                      depth, parent});
                    branch_goal_[s->node_id] = {t, t + 1};
                    self(self, s->then_body, t, depth + 1);
                    if (s->tag == Stmt::Tag::If) self(self, s->else_body, t + 1, depth + 1);
                } else {
                    self(self, s->then_body, parent, depth);
                    self(self, s->else_body, parent, depth);
                }
            }
        };
        walk(walk, m->body, -1, 1);
    }
}

int SubjectInfo::entry_goal(const std::string& method) const {
    auto it = entry_goal_.find(method);
    if (it == entry_goal_.end()) throw std::runtime_error("unknown method '" + method + "'");
    return it->second;
}

std::pair<int, int> SubjectInfo::branch_goals(int node_id) const {
    auto it = branch_goal_.find(node_id);
    if (it == branch_goal_.end()) throw std::runtime_error("node is not a conditional");
    return it->second;
}

int SubjectInfo::method_index(const std::string& method) const {
    auto it = decl_index_.find(method);
    if (it == decl_index_.end()) throw std::runtime_error("unknown method '" + method + "'");
    return it->second;
}

std::set<std::string> SubjectInfo::static_call_closure(const std::string& method) const {
    if (!decl_index_.count(method)) throw std::runtime_error("unknown method '" + method + "'");
    std::set<std::string> closure{method};
    std::vector<std::string> work{method};
    while (!work.empty()) {
        std::string cur = work.back();
        work.pop_back();
        auto it = callees_.find(cur);
        if (it == callees_.end()) continue;
        for (auto& callee : it->second) {
            if (closure.insert(callee).second) work.push_back(callee);
        }
    }
    return closure;
}

bool SubjectInfo::is_inspector(const std::string& method) const {
    const MethodDecl* m = unit_->find_method(method);
    return m && m->is_inspector;
}

std::vector<std::string> SubjectInfo::inspectors() const {
    std::vector<std::string> out;
    for (auto& m : unit_->methods)
        if (m.is_inspector) out.push_back(m.name);
    return out;
}

}  // namespace srgen
