#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "srgen/emitter.hpp"
#include "srgen/pipeline.hpp"
#include "support/helpers.hpp"

using namespace srgen;
using namespace srgen::testsupport;

namespace {

bool assertions_equal(const Assertion& a, const Assertion& b, bool compare_value) {
    if (!a.point.same_point(b.point)) return false;
    if (a.fallback != b.fallback) return false;
    if (a.point.is_exception != b.point.is_exception) return false;
    if (a.point.is_exception) return a.point.exception_text == b.point.exception_text;
    return !compare_value || a.point.value == b.point.value;
}

}  // namespace

TEST_CASE("a deposit test renders with act and assert sections") {
    SubjectUnit u = load_corpus("bank_account.sub");
    SubjectInfo info(u);
    TestCase t = simple_deposit_test(Representation::Focal);

    ExecResult r = execute_test(info, t);
    auto candidates = candidate_assertions(harvest_observations(info, t, r), 0.01);
    std::vector<Assertion> kept;
    for (auto& c : candidates)
        if (c.point.inspector == "getBalance") kept.push_back(c);

    RenderedSuite out = render_suite({t}, {kept}, info, {});
    REQUIRE(out.names.size() == 1);
    CHECK(out.names[0] == "test_deposit_1");
    const std::string& body = out.sources[0];
    size_t act = body.find("// act");
    size_t call = body.find(".deposit(");
    size_t assert_mark = body.find("// assert");
    size_t balance = body.find(".getBalance() == 150.0 tol 0.01");
    CHECK(act != std::string::npos);
    CHECK(call != std::string::npos);
    CHECK(act < call);
    CHECK(assert_mark != std::string::npos);
    CHECK(balance != std::string::npos);
    CHECK(call < balance);
}

TEST_CASE("an empty suite renders to a header only") {
    SubjectUnit u = load_corpus("counter.sub");
    SubjectInfo info(u);
    RenderedSuite out = render_suite({}, {}, info, {});
    CHECK(out.names.empty());
    CHECK(out.file_text.find("test ") == std::string::npos);
    CHECK(out.file_text.find("suite Counter") != std::string::npos);
}

TEST_CASE("same-method focal tests get sequential names") {
    SubjectUnit u = load_corpus("bank_account.sub");
    SubjectInfo info(u);
    TestCase a = simple_deposit_test(Representation::Focal);
    TestCase b = simple_deposit_test(Representation::Focal);
    b.stmts[3].literal = Value::of_float(75.0);
    RenderedSuite out = render_suite({a, b}, {{}, {}}, info, {});
    REQUIRE(out.names.size() == 2);
    CHECK(out.names[0] == "test_deposit_1");
    CHECK(out.names[1] == "test_deposit_2");
}

TEST_CASE("baseline tests get plain sequential names") {
    SubjectUnit u = load_corpus("bank_account.sub");
    SubjectInfo info(u);
    TestCase a = simple_deposit_test(Representation::Baseline);
    RenderedSuite out = render_suite({a}, {{}}, info, {});
    CHECK(out.names[0] == "test_1");
}

TEST_CASE("rendered suites re-parse to the same statements and assertions") {
    for (const char* name : {"bank_account.sub", "turnstile.sub", "string_box.sub"}) {
        SubjectUnit u = load_corpus(name);
        SubjectInfo info(u);
        for (Representation repr : {Representation::Baseline, Representation::Focal}) {
            RunConfig cfg;
            cfg.repr = repr;
            cfg.seed = 3;
            cfg.budget = 15000;
            GenerateOutput out = run_generate(info, "subject", cfg);

            ParsedSuite back = parse_suite(out.rendered, info, cfg.tolerance);
            CHECK(back.repr == repr);
            REQUIRE(back.tests.size() == out.suite.size());
            for (size_t i = 0; i < back.tests.size(); ++i) {
                CHECK(back.tests[i] == out.suite[i]);
                REQUIRE(back.assertions[i].size() == out.kept[i].size());
                for (size_t k = 0; k < back.assertions[i].size(); ++k)
                    CHECK(assertions_equal(back.assertions[i][k], out.kept[i][k], true));
            }
        }
    }
}

TEST_CASE("distinct tests render to distinct text") {
    SubjectUnit u = load_corpus("counter.sub");
    SubjectInfo info(u);
    Rng rng(5);
    GenConfig cfg;
    std::vector<TestCase> pool;
    std::vector<std::string> texts;
    for (int i = 0; i < 30; ++i) {
        TestCase t = random_test(info, Representation::Baseline, 0, cfg, rng);
        RenderedSuite out = render_suite({t}, {{}}, info, {});
        for (size_t a = 0; a < pool.size(); ++a) {
            if (pool[a] == t)
                CHECK(texts[a] == out.sources[0]);
            else
                CHECK(texts[a] != out.sources[0]);
        }
        pool.push_back(std::move(t));
        texts.push_back(out.sources[0]);
    }
}

TEST_CASE("exception-valued and fallback assertions round-trip through the text") {
    SubjectUnit u = load_corpus("calculator.sub");
    SubjectInfo info(u);
    TestCase t;
    t.repr = Representation::Focal;
    t.focal_method = "getLast";
    Statement ctor{};
    ctor.kind = Statement::Kind::Constructor;
    ctor.defined = ValueKind::UnitRef;
    Statement get{};
    get.kind = Statement::Kind::Method;
    get.method = "getLast";
    get.defined = ValueKind::Int;
    get.receiver = 0;
    t.stmts = {ctor, get};

    Assertion ret;
    ret.id = 0;
    ret.point.kind = Observation::Kind::StatementReturn;
    ret.point.stmt_index = 2;
    ret.point.value = Value::of_int(0);
    ret.fallback = true;
    Assertion broken_inspector;
    broken_inspector.id = 1;
    broken_inspector.point.kind = Observation::Kind::InspectorValue;
    broken_inspector.point.stmt_index = 1;
    broken_inspector.point.inspector = "getLast";
    broken_inspector.point.is_exception = true;
    broken_inspector.point.exception_text = "arith";

    RenderedSuite out = render_suite({t}, {{ret, broken_inspector}}, info, {});
    CHECK(out.file_text.find("fallback;") != std::string::npos);
    CHECK(out.file_text.find("throws \"arith\"") != std::string::npos);

    ParsedSuite back = parse_suite(out.file_text, info);
    REQUIRE(back.assertions.size() == 1);
    REQUIRE(back.assertions[0].size() == 2);
    CHECK(back.assertions[0][0].fallback);
    CHECK(back.assertions[0][1].point.is_exception);
    CHECK(back.assertions[0][1].point.exception_text == "arith");
    CHECK(back.tests[0] == t);
}

TEST_CASE("suite parsing rejects malformed files") {
    SubjectUnit u = load_corpus("counter.sub");
    SubjectInfo info(u);

    CHECK_THROWS_AS(parse_suite("suite Counter bogus\n", info), ParseError);
    CHECK_THROWS_AS(parse_suite("suite Wrong baseline\n", info), ParseError);
    // duplicate test names
    CHECK_THROWS_AS(parse_suite(R"(suite Counter baseline
test t { var v0: int = 1; var v1: int = 2; var v2: Counter = new Counter(v0, v1); }
test t { var v0: int = 1; var v1: int = 2; var v2: Counter = new Counter(v0, v1); }
)",
                                info),
                    ParseError);
    // unknown variable
    CHECK_THROWS_AS(parse_suite(R"(suite Counter baseline
test t { var v0: int = 1; var v1: Counter = new Counter(v0, nope); }
)",
                                info),
                    ParseError);
    // statements after assertions
    CHECK_THROWS_AS(parse_suite(R"(suite Counter baseline
test t {
  var v0: int = 1;
  var v1: int = 9;
  var v2: Counter = new Counter(v0, v1);
  assert v2.getCount() == 1;
  v2.increment();
}
)",
                                info),
                    ParseError);
    // a focal file whose test does not end in a call
    CHECK_THROWS_AS(parse_suite(R"(suite Counter focal
test t {
  var v0: int = 1;
}
)",
                                info),
                    ParseError);
}

TEST_CASE("hand-written suites parse into executable tests") {
    SubjectUnit u = load_corpus("bank_account.sub");
    SubjectInfo info(u);
    ParsedSuite suite = parse_suite(R"(
// regression suite
suite BankAccount focal

test deposits_add_up {
  var v0: string = "x";
  var v1: float = 100.0;
  var v2: BankAccount = new BankAccount(v0, v1);
  var v3: float = 50.0;
  v2.deposit(v3);
  assert completes;
  assert v2.getBalance() == 150.0 tol 0.01;
}
)",
                                    info, 1e-6);
    REQUIRE(suite.tests.size() == 1);
    CHECK(suite.repr == Representation::Focal);
    CHECK(suite.tests[0].focal_method == "deposit");
    REQUIRE(suite.assertions[0].size() == 2);
    CHECK(suite.assertions[0][0].point.kind == Observation::Kind::ExceptionStatus);
    CHECK(suite.assertions[0][1].tolerance == 0.01);
    CHECK(validate_test(suite.tests[0], info).empty());
}
