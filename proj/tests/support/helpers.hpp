// helpers.hpp - shared fixtures for the test binaries
#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "srgen/parser.hpp"
#include "srgen/testcase.hpp"

#ifndef SRGEN_ROOT
#define SRGEN_ROOT "."
#endif

namespace srgen::testsupport {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string corpus_path(const std::string& name) {
    return std::string(SRGEN_ROOT) + "/corpus/" + name;
}

inline SubjectUnit load_corpus(const std::string& name) {
    return parse_subject(read_file(corpus_path(name)));
}

inline const std::vector<std::string>& corpus_files() {
    static const std::vector<std::string> files = {
        "accumulator.sub", "bank_account.sub", "calculator.sub",
        "counter.sub",     "string_box.sub",   "turnstile.sub",
    };
    return files;
}

// Construct with an opening balance of 100, then deposit 50.
inline TestCase simple_deposit_test(Representation repr) {
    TestCase t;
    t.repr = repr;
    Statement owner;
    owner.kind = Statement::Kind::Primitive;
    owner.defined = ValueKind::Text;
    owner.literal = Value::of_text("X");
    Statement initial;
    initial.kind = Statement::Kind::Primitive;
    initial.defined = ValueKind::Float;
    initial.literal = Value::of_float(100.0);
    Statement ctor;
    ctor.kind = Statement::Kind::Constructor;
    ctor.defined = ValueKind::UnitRef;
    ctor.args = {0, 1};
    Statement amount;
    amount.kind = Statement::Kind::Primitive;
    amount.defined = ValueKind::Float;
    amount.literal = Value::of_float(50.0);
    Statement deposit;
    deposit.kind = Statement::Kind::Method;
    deposit.method = "deposit";
    deposit.receiver = 2;
    deposit.args = {3};
    t.stmts = {owner, initial, ctor, amount, deposit};
    if (repr == Representation::Focal) t.focal_method = "deposit";
    return t;
}

// Close the account, deposit 665.49, then transfer 0.05 to itself.
inline TestCase closed_account_sequence_test(Representation repr) {
    TestCase t;
    t.repr = repr;
    Statement owner;
    owner.kind = Statement::Kind::Primitive;
    owner.defined = ValueKind::Text;
    owner.literal = Value::of_text("");
    Statement initial;
    initial.kind = Statement::Kind::Primitive;
    initial.defined = ValueKind::Float;
    initial.literal = Value::of_float(0.0);
    Statement ctor;
    ctor.kind = Statement::Kind::Constructor;
    ctor.defined = ValueKind::UnitRef;
    ctor.args = {0, 1};
    Statement close;
    close.kind = Statement::Kind::Method;
    close.method = "closeAccount";
    close.receiver = 2;
    Statement amount;
    amount.kind = Statement::Kind::Primitive;
    amount.defined = ValueKind::Float;
    amount.literal = Value::of_float(665.49);
    Statement deposit;
    deposit.kind = Statement::Kind::Method;
    deposit.method = "deposit";
    deposit.receiver = 2;
    deposit.args = {4};
    Statement small;
    small.kind = Statement::Kind::Primitive;
    small.defined = ValueKind::Float;
    small.literal = Value::of_float(0.05);
    Statement transfer;
    transfer.kind = Statement::Kind::Method;
    transfer.method = "transferFunds";
    transfer.receiver = 2;
    transfer.args = {2, 6};
    t.stmts = {owner, initial, ctor, close, amount, deposit, small, transfer};
    if (repr == Representation::Focal) t.focal_method = "transferFunds";
    return t;
}

}  // namespace srgen::testsupport
