// testcase.hpp - the evolvable test-case encoding
#pragma once

#include <string>
#include <vector>

#include "srgen/subject_info.hpp"
#include "srgen/value.hpp"

namespace srgen {

enum class Representation { Baseline, Focal };

const char* repr_name(Representation r);

// One test statement. Variables have no names of their own: a statement
// that produces a value *is* the variable, and references are the
// 0-based index of the producing statement.
struct Statement {
    enum class Kind { Primitive, Constructor, Field, Method, Assignment };

    Kind kind;
    // Kind of the value this statement defines; None for void method calls.
    ValueKind defined = ValueKind::None;

    Value literal;             // Primitive
    std::string method;        // Method ("constructor" never appears here)
    int receiver = -1;         // Method / Field: index of the receiver statement
    std::vector<int> args;     // Constructor / Method argument indices
    std::string field;         // Field: public field name
    int source = -1;           // Assignment: index of the copied statement

    bool defines() const { return defined != ValueKind::None; }
    bool operator==(const Statement& o) const;
};

struct TestCase {
    Representation repr = Representation::Baseline;
    std::vector<Statement> stmts;
    std::string focal_method;  // set iff repr == Focal; "constructor" allowed

    int size() const { return static_cast<int>(stmts.size()); }
    // Index of the focal statement (always the last one).
    int focal_index() const { return size() - 1; }
    bool operator==(const TestCase& o) const;
};

// Length limits for generation and variation.
struct GenConfig {
    int max_len = 40;
    int init_len = 8;
};

// Structural well-formedness check used by tests and by the operator
// closure property suite. Returns human-readable violations; empty means
// the test satisfies every chromosome invariant.
std::vector<std::string> validate_test(const TestCase& t, const SubjectInfo& info,
                                       const GenConfig& cfg = {});

}  // namespace srgen
