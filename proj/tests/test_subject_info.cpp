#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "srgen/subject_info.hpp"
#include "support/helpers.hpp"

using namespace srgen;
using namespace srgen::testsupport;

TEST_CASE("one conditional yields entry plus two branch goals") {
    SubjectUnit u = parse_subject(R"(unit U {
  constructor() {}
  method m(a: int, b: int) {
    if (a < b) { this.noop(); }
  }
  method noop() {}
})");
    SubjectInfo info(u);
    int in_m = 0;
    for (auto& g : info.goals())
        if (g.method == "m") ++in_m;
    CHECK(in_m == 3);
}

TEST_CASE("the shipped fixture has six entries and ten branch goals") {
    SubjectUnit u = load_corpus("bank_account.sub");
    SubjectInfo info(u);
    int entries = 0, branches = 0;
    for (auto& g : info.goals())
        (g.kind == GoalKind::MethodEntry ? entries : branches)++;
    CHECK(entries == 6);
    CHECK(branches == 10);
    CHECK(info.goal_count() == 16);
}

TEST_CASE("goal count equals declarations plus twice the conditionals, corpus-wide") {
    for (const std::string& f : corpus_files()) {
        SubjectUnit u = parse_subject(read_file(corpus_path(f)));
        SubjectInfo info(u);
        // independent conditional count from the canonical source text
        std::string text = pretty_print(u);
        int conditionals = 0;
        for (size_t pos = 0; (pos = text.find("if (", pos)) != std::string::npos; ++pos)
            ++conditionals;
        for (size_t pos = 0; (pos = text.find("while (", pos)) != std::string::npos; ++pos)
            ++conditionals;
        int decls = static_cast<int>(u.methods.size() + u.constructors.size());
        CHECK_MESSAGE(info.goal_count() == decls + 2 * conditionals, "mismatch for ", f);
    }
}

TEST_CASE("minimal unit yields a single constructor-entry goal") {
    SubjectUnit u = parse_subject("unit Empty { constructor() {} }");
    SubjectInfo info(u);
    REQUIRE(info.goal_count() == 1);
    CHECK(info.goals()[0].kind == GoalKind::MethodEntry);
    CHECK(info.goals()[0].cdg_depth == 0);
}

TEST_CASE("nested conditionals hang off the outer true outcome") {
    SubjectUnit u = parse_subject(R"(unit U {
  constructor() {}
  method m(c1: bool, c2: bool) {
    if (c1) {
      if (c2) { this.noop(); }
    }
  }
  method noop() {}
})");
    SubjectInfo info(u);
    std::vector<const CoverageGoal*> branches;
    for (auto& g : info.goals())
        if (g.method == "m" && g.kind != GoalKind::MethodEntry) branches.push_back(&g);
    REQUIRE(branches.size() == 4);
    const CoverageGoal* outer_true = branches[0];
    CHECK(outer_true->kind == GoalKind::BranchTrue);
    CHECK(outer_true->parent_goal == -1);
    CHECK(outer_true->cdg_depth == 1);
    // inner pair nests under the outer true outcome
    int outer_true_idx = static_cast<int>(outer_true - &info.goals()[0]);
    CHECK(branches[2]->parent_goal == outer_true_idx);
    CHECK(branches[3]->parent_goal == outer_true_idx);
    CHECK(branches[2]->cdg_depth == 2);
}

TEST_CASE("sequential conditionals are both roots") {
    SubjectUnit u = parse_subject(R"(unit U {
  constructor() {}
  method m(c1: bool, c2: bool) {
    if (c1) {}
    if (c2) {}
  }
})");
    SubjectInfo info(u);
    for (auto& g : info.goals())
        if (g.kind != GoalKind::MethodEntry) CHECK(g.parent_goal == -1);
}

TEST_CASE("a conditional inside a while body nests under the loop's true outcome") {
    SubjectUnit u = parse_subject(R"(unit U {
  constructor() {}
  method m(c1: bool, c2: bool) {
    while (c1) {
      if (c2) {}
      c1 = false;
    }
  }
})");
    SubjectInfo info(u);
    std::vector<int> branch_ids;
    for (int g = 0; g < info.goal_count(); ++g)
        if (info.goals()[g].kind != GoalKind::MethodEntry) branch_ids.push_back(g);
    REQUIRE(branch_ids.size() == 4);
    CHECK(info.goals()[branch_ids[0]].parent_goal == -1);  // while true
    CHECK(info.goals()[branch_ids[1]].parent_goal == -1);  // while false
    CHECK(info.goals()[branch_ids[2]].parent_goal == branch_ids[0]);
    CHECK(info.goals()[branch_ids[3]].parent_goal == branch_ids[0]);
}

TEST_CASE("every branch goal is a root or has exactly one parent, corpus-wide") {
    for (const std::string& f : corpus_files()) {
        SubjectUnit u = parse_subject(read_file(corpus_path(f)));
        SubjectInfo info(u);
        int roots = 0, edges = 0, branch_goals = 0;
        for (auto& g : info.goals()) {
            if (g.kind == GoalKind::MethodEntry) continue;
            ++branch_goals;
            if (g.parent_goal < 0)
                ++roots;
            else {
                ++edges;
                CHECK(info.goals()[g.parent_goal].kind != GoalKind::MethodEntry);
                CHECK(g.cdg_depth == info.goals()[g.parent_goal].cdg_depth + 1);
            }
        }
        CHECK(roots + edges == branch_goals);
    }
}

TEST_CASE("call closure of a leaf method is itself") {
    SubjectUnit u = load_corpus("bank_account.sub");
    SubjectInfo info(u);
    CHECK(info.static_call_closure("getBalance") == std::set<std::string>{"getBalance"});
}

TEST_CASE("transferFunds reaches deposit through its destination parameter") {
    SubjectUnit u = load_corpus("bank_account.sub");
    SubjectInfo info(u);
    CHECK(info.static_call_closure("transferFunds") ==
          std::set<std::string>{"transferFunds", "deposit"});
}

TEST_CASE("mutually recursive methods close over each other") {
    SubjectUnit u = parse_subject(R"(unit U {
  constructor() {}
  method a(n: int) {
    if (n > 0) { this.b(n - 1); }
  }
  method b(n: int) {
    if (n > 0) { this.a(n - 1); }
  }
})");
    SubjectInfo info(u);
    CHECK(info.static_call_closure("a") == std::set<std::string>{"a", "b"});
    CHECK(info.static_call_closure("b") == std::set<std::string>{"a", "b"});
}

TEST_CASE("call closure is idempotent across the corpus") {
    for (const std::string& f : corpus_files()) {
        SubjectUnit u = parse_subject(read_file(corpus_path(f)));
        SubjectInfo info(u);
        for (int d = 0; d < info.method_count(); ++d) {
            auto once = info.static_call_closure(info.method_name(d));
            std::set<std::string> twice;
            for (auto& m : once) {
                auto c = info.static_call_closure(m);
                twice.insert(c.begin(), c.end());
            }
            CHECK(once == twice);
        }
    }
}

TEST_CASE("unknown method names are rejected") {
    SubjectUnit u = parse_subject("unit Empty { constructor() {} }");
    SubjectInfo info(u);
    CHECK_THROWS(info.static_call_closure("nope"));
}
