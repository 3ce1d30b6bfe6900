// ast.hpp - AST for subject units (the code under test)
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "srgen/value.hpp"

namespace srgen {

struct SourcePos {
    int line = 0;
    int col = 0;
};

enum class BinOp { Add, Sub, Mul, Div, Mod, Lt, Le, Gt, Ge, Eq, Ne, And, Or };
enum class UnOp { Neg, Not };

const char* binop_text(BinOp op);

inline bool is_arith(BinOp op) { return op <= BinOp::Mod; }
inline bool is_comparison(BinOp op) { return op >= BinOp::Lt && op <= BinOp::Ne; }
inline bool is_equality(BinOp op) { return op == BinOp::Eq || op == BinOp::Ne; }
inline bool is_logical(BinOp op) { return op == BinOp::And || op == BinOp::Or; }

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
    enum class Tag {
        IntLit, FloatLit, BoolLit, TextLit,
        Name,       // parameter or local
        FieldRead,  // this.f
        SelfCall,   // this.m(args)
        ParamCall,  // recv.m(args) where recv is a unit-reference name
        Binary, Unary,
    };

    Tag tag;
    SourcePos pos;
    int node_id = -1;                 // preorder id within the unit, set after parse
    ValueKind type = ValueKind::None; // filled by the checker

    int64_t int_val = 0;
    double float_val = 0.0;
    bool bool_val = false;
    std::string text_val;

    std::string name;   // Name / FieldRead field / SelfCall+ParamCall method
    std::string recv;   // ParamCall receiver name
    std::vector<ExprPtr> args;

    BinOp bin = BinOp::Add;
    UnOp un = UnOp::Neg;
    ExprPtr lhs, rhs;   // Binary
    ExprPtr operand;    // Unary
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Stmt {
    enum class Tag {
        Local,       // var name: kind = value;
        AssignLocal, // name = value;
        AssignField, // this.name = value;
        If,          // value = condition; then_body / else_body
        While,       // value = condition; then_body
        Return,      // value optional
        Throw,       // text
        ExprStmt,    // value (a call expression)
    };

    Tag tag;
    SourcePos pos;
    int node_id = -1;

    std::string name;
    ValueKind declared = ValueKind::None;
    ExprPtr value;
    std::vector<StmtPtr> then_body;
    std::vector<StmtPtr> else_body;
    std::string text;
};

struct Param {
    std::string name;
    ValueKind kind;   // UnitRef means "same unit as the receiver"
    SourcePos pos;
};

struct MethodDecl {
    std::string name;               // constructors are named "constructor"
    std::vector<Param> params;
    ValueKind return_kind = ValueKind::None;
    std::vector<StmtPtr> body;
    bool is_ctor = false;
    bool is_inspector = false;      // derived: value-returning, no params, no field writes
    SourcePos pos;
};

struct FieldDecl {
    std::string name;
    ValueKind kind;
    bool is_public = false;
    SourcePos pos;
};

struct SubjectUnit {
    std::string name;
    std::vector<FieldDecl> fields;
    std::vector<MethodDecl> constructors;  // grammar admits exactly one
    std::vector<MethodDecl> methods;

    const MethodDecl* find_method(const std::string& n) const;
    const FieldDecl* find_field(const std::string& n) const;
    int field_index(const std::string& n) const;

    // Constructors first, then methods, in source order.
    std::vector<const MethodDecl*> decls() const;
};

ExprPtr clone(const Expr& e);
StmtPtr clone(const Stmt& s);
SubjectUnit clone(const SubjectUnit& u);

}  // namespace srgen
