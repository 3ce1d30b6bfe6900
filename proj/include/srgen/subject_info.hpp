// subject_info.hpp - static analysis over a parsed unit: coverage goals,
// control-dependency graph, call closures, inspector classification
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "srgen/ast.hpp"

namespace srgen {

enum class GoalKind { MethodEntry, BranchTrue, BranchFalse };

struct CoverageGoal {
    std::string id;        // e.g. "deposit:entry", "deposit:n7:T"
    std::string method;    // enclosing declaration ("constructor" for ctors)
    GoalKind kind;
    int node_id = -1;      // conditional's node id; -1 for method-entry
    int cdg_depth = 0;     // 0 for entries, parent depth + 1 for branches
    int parent_goal = -1;  // index of the controlling branch-outcome goal, -1 for roots
};

// Derived, read-only view over a SubjectUnit. Built once per subject and
// shared by the search, runtime and mutation engines.
class SubjectInfo {
public:
    explicit SubjectInfo(const SubjectUnit& unit);

    const SubjectUnit& unit() const { return *unit_; }

    // Goals in declaration order, then AST preorder; per declaration the
    // entry goal precedes its branch goals, true before false.
    const std::vector<CoverageGoal>& goals() const { return goals_; }
    int goal_count() const { return static_cast<int>(goals_.size()); }

    int entry_goal(const std::string& method) const;
    // Goal indices for a conditional node (true outcome, false outcome).
    std::pair<int, int> branch_goals(int node_id) const;

    int method_index(const std::string& method) const;  // index into decls()
    int method_count() const { return static_cast<int>(decl_names_.size()); }
    const std::string& method_name(int index) const { return decl_names_[index]; }
    const MethodDecl& decl(int index) const { return *decls_[index]; }

    // {method} plus everything reachable through self-calls and calls on
    // unit-reference receivers, as a fixed point over the static AST.
    std::set<std::string> static_call_closure(const std::string& method) const;

    bool is_inspector(const std::string& method) const;
    // Inspector methods in declaration order.
    std::vector<std::string> inspectors() const;

private:
    const SubjectUnit* unit_;
    std::vector<CoverageGoal> goals_;
    std::vector<const MethodDecl*> decls_;
    std::vector<std::string> decl_names_;
    std::map<std::string, int> decl_index_;
    std::map<std::string, int> entry_goal_;
    std::map<int, std::pair<int, int>> branch_goal_;       // node id -> (true, false)
    std::map<std::string, std::set<std::string>> callees_; // direct static calls
};

}  // namespace srgen
