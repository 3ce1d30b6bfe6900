#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "srgen/parser.hpp"
#include "support/helpers.hpp"

using namespace srgen;
using namespace srgen::testsupport;

namespace {

const char* kFourMethodBank = R"(
unit BankAccount {
  field balance: float;
  field closed: bool;

  constructor(owner: string, initial: float) {
    this.balance = initial;
    this.closed = false;
  }

  method deposit(amount: float) {
    this.balance = this.balance + amount;
  }

  method closeAccount() {
    this.closed = true;
  }

  method transferFunds(destination: BankAccount, amount: float) {
    this.balance = this.balance - amount;
    destination.deposit(amount);
  }

  method getBalance(): float {
    return this.balance;
  }
}
)";

}  // namespace

TEST_CASE("bank account source with the four transfer-scenario methods parses") {
    SubjectUnit u = parse_subject(kFourMethodBank);
    CHECK(u.name == "BankAccount");
    CHECK(u.methods.size() == 4);
    CHECK(u.constructors.size() == 1);
    CHECK(u.find_method("deposit") != nullptr);
    CHECK(u.find_method("transferFunds") != nullptr);
}

TEST_CASE("minimal unit parses to zero methods and one constructor") {
    SubjectUnit u = parse_subject("unit Empty { constructor() {} }");
    CHECK(u.methods.empty());
    CHECK(u.constructors.size() == 1);
    CHECK(u.fields.empty());
}

TEST_CASE("referencing an undeclared field is a resolution error") {
    const char* src = R"(
unit U {
  constructor() {}
  method m(): int {
    return this.x;
  }
}
)";
    try {
        parse_subject(src);
        FAIL("expected a resolution error");
    } catch (const ParseError& e) {
        CHECK(e.message.find("x") != std::string::npos);
        CHECK(e.pos.line == 5);
        CHECK(e.pos.col > 0);
    }
}

TEST_CASE("duplicate method names are rejected") {
    const char* src = "unit U { constructor() {} method m() {} method m() {} }";
    CHECK_THROWS_AS(parse_subject(src), ParseError);
    try {
        parse_subject(src);
    } catch (const ParseError& e) {
        CHECK(e.message.find("duplicate") != std::string::npos);
        CHECK(e.message.find("m") != std::string::npos);
    }
}

TEST_CASE("kind errors name both operand kinds") {
    const char* src = R"(unit U {
  constructor() {}
  method m(a: int, s: string): int {
    return a + s;
  }
})";
    try {
        parse_subject(src);
        FAIL("expected a kind error");
    } catch (const ParseError& e) {
        CHECK(e.message.find("int") != std::string::npos);
        CHECK(e.message.find("string") != std::string::npos);
    }
}

TEST_CASE("syntax errors report the expected token") {
    try {
        parse_subject("unit U { constructor( {} }");
        FAIL("expected a syntax error");
    } catch (const ParseError& e) {
        CHECK(e.message.find("expected") != std::string::npos);
    }
}

TEST_CASE("no implicit conversion outside arithmetic") {
    // int initializer for a float local is rejected
    const char* src = R"(unit U {
  constructor() {}
  method m() {
    var x: float = 1;
  }
})";
    CHECK_THROWS_AS(parse_subject(src), ParseError);

    // but int op float promotes inside arithmetic
    const char* ok = R"(unit U {
  constructor() {}
  method m(): float {
    return 1 + 2.5;
  }
})";
    CHECK_NOTHROW(parse_subject(ok));
}

TEST_CASE("conditions must be bool") {
    const char* src = R"(unit U {
  constructor() {}
  method m(a: int) {
    if (a) {}
  }
})";
    CHECK_THROWS_AS(parse_subject(src), ParseError);
}

TEST_CASE("parse then pretty-print round-trips on the corpus") {
    for (const std::string& f : corpus_files()) {
        SubjectUnit u1 = parse_subject(read_file(corpus_path(f)));
        std::string once = pretty_print(u1);
        SubjectUnit u2 = parse_subject(once);
        std::string twice = pretty_print(u2);
        CHECK_MESSAGE(once == twice, "round trip failed for ", f);
    }
}

TEST_CASE("inspector classification") {
    SubjectUnit u = load_corpus("bank_account.sub");
    CHECK(u.find_method("getBalance")->is_inspector);
    CHECK(u.find_method("isClosed")->is_inspector);
    CHECK_FALSE(u.find_method("deposit")->is_inspector);        // writes a field
    CHECK_FALSE(u.find_method("closeAccount")->is_inspector);   // writes a field

    // a reader that transitively calls a writer is not an inspector; one
    // that can throw still is
    const char* src = R"(unit U {
  field v: int;
  constructor() { this.v = 0; }
  method bump() { this.v = this.v + 1; }
  method sneaky(): int { this.bump(); return this.v; }
  method guarded(): int {
    if (this.v < 0) { throw "bad"; }
    return this.v;
  }
})";
    SubjectUnit t = parse_subject(src);
    CHECK_FALSE(t.find_method("sneaky")->is_inspector);
    CHECK(t.find_method("guarded")->is_inspector);
}

TEST_CASE("float literals survive printing exactly") {
    const char* src = R"(unit U {
  constructor() {}
  method m(): float {
    return 665.49;
  }
})";
    SubjectUnit u = parse_subject(src);
    std::string printed = pretty_print(u);
    CHECK(printed.find("665.49") != std::string::npos);
    SubjectUnit again = parse_subject(printed);
    CHECK(pretty_print(again) == printed);
}

TEST_CASE("operator precedence is preserved through the printer") {
    const char* src = R"(unit U {
  constructor() {}
  method m(a: int, b: int, c: int): bool {
    return (a + b) * c < a - b / c && !(a == c) || b > 0;
  }
})";
    SubjectUnit u = parse_subject(src);
    std::string once = pretty_print(u);
    CHECK(pretty_print(parse_subject(once)) == once);
}
