// mutation.hpp - first-order mutants and the assertion kill matrix
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srgen/ast.hpp"
#include "srgen/interpreter.hpp"
#include "srgen/subject_info.hpp"
#include "srgen/testcase.hpp"

namespace srgen {

enum class MutOp { AOR, ROR, LCR, CRP, NEG };

const char* mutop_name(MutOp op);

struct Mutant {
    int id;                  // position in generation order
    std::string method;      // lexically enclosing declaration
    int node_id;             // AST node the change applies to
    MutOp op;
    BinOp new_bin = BinOp::Add;  // AOR / ROR / LCR replacement
    int crp_variant = 0;         // CRP: 0 = c+1, 1 = c-1, 2 = zero / bool flip
    std::string description;
    SourcePos pos;
};

// Operator tables in fixed order over the AST preorder. Replacements are
// kind-preserving: ROR on non-numeric equality only swaps == and !=, and
// CRP skips a replacement equal to the original literal.
std::vector<Mutant> generate_mutants(const SubjectUnit& unit);

// Deep copy with the single change applied; node ids are preserved, so
// goals and branch instrumentation line up with the original.
SubjectUnit apply_mutant(const SubjectUnit& unit, const Mutant& m);

// A test with its candidate assertions expressed as observation points.
struct TestUnderAnalysis {
    const TestCase* test;
    std::vector<Observation> expected;  // original-run observation per assertion
    std::vector<double> tolerance;      // per assertion
};

struct MutantFlags {
    bool timeout = false;
    bool pre_divergence = false;  // diverged before some observation point
};

class KillMatrix {
public:
    enum class Cell : uint8_t { Survives, Kills, Divergent };

    KillMatrix() = default;
    KillMatrix(int n_tests, const std::vector<int>& assertions_per_test, int n_mutants);

    Cell cell(int test, int assertion, int mutant) const {
        return cells_[test][assertion][mutant];
    }
    void set(int test, int assertion, int mutant, Cell c) { cells_[test][assertion][mutant] = c; }
    const std::vector<MutantFlags>& flags() const { return flags_; }
    MutantFlags& flag(int mutant) { return flags_[mutant]; }
    int mutant_count() const { return n_mutants_; }
    int test_count() const { return static_cast<int>(cells_.size()); }
    int assertion_count(int test) const { return static_cast<int>(cells_[test].size()); }

    // Mutants killed by the given assertion of the given test.
    std::vector<int> kills_of(int test, int assertion) const;

    bool operator==(const KillMatrix& o) const {
        return cells_ == o.cells_ && flags_timeout() == o.flags_timeout() &&
               flags_div() == o.flags_div();
    }

private:
    std::vector<bool> flags_timeout() const;
    std::vector<bool> flags_div() const;
    std::vector<std::vector<std::vector<Cell>>> cells_;  // [test][assertion][mutant]
    std::vector<MutantFlags> flags_;
    int n_mutants_ = 0;
};

// Re-executes every (test, mutant) pair, comparing each assertion's
// observation point. Unreachable points mark the cell divergent and flag
// the mutant pre-assertion-divergent; step-limit hits flag it timed out.
KillMatrix run_kill_analysis(const SubjectUnit& unit, const std::vector<TestUnderAnalysis>& tests,
                             const std::vector<Mutant>& mutants, const ExecLimits& limits);

struct MutationScore {
    double score = 0.0;
    int killed = 0;
    int total = 0;
    bool no_mutants = false;
};

// killed = any kept assertion kills, or the mutant diverged or timed out.
// kept[t] lists the kept assertion rows of test t.
MutationScore mutation_score(const KillMatrix& matrix, const std::vector<std::vector<int>>& kept);

// Compares an expected observation against what a mutant run produced at
// the same point; true means the assertion would fail (a kill).
bool observation_mismatch(const Observation& expected, const Observation& actual, double tolerance);

}  // namespace srgen
