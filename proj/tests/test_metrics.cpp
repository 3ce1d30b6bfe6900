#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "srgen/metrics.hpp"
#include "srgen/pipeline.hpp"
#include "support/helpers.hpp"

using namespace srgen;
using namespace srgen::testsupport;

namespace {

Assertion killer(int id, std::vector<int> kills) {
    Assertion a;
    a.id = id;
    a.point.kind = Observation::Kind::InspectorValue;
    a.point.stmt_index = 1;
    a.killed = std::move(kills);
    return a;
}

std::vector<Mutant> mutants_in(const std::vector<std::string>& methods) {
    std::vector<Mutant> out;
    for (size_t i = 0; i < methods.size(); ++i) {
        Mutant m;
        m.id = static_cast<int>(i);
        m.method = methods[i];
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace

TEST_CASE("a multi-method baseline test is a single-responsibility violation") {
    SubjectUnit u = load_corpus("bank_account.sub");
    SubjectInfo info(u);
    TestCase t = closed_account_sequence_test(Representation::Baseline);

    auto mutants = mutants_in({"closeAccount", "deposit", "transferFunds"});
    std::vector<std::vector<Assertion>> kept = {{killer(0, {0, 1, 2})}};
    KillMatrix matrix(1, {1}, 3);
    matrix.set(0, 0, 0, KillMatrix::Cell::Kills);
    matrix.set(0, 0, 1, KillMatrix::Cell::Kills);
    matrix.set(0, 0, 2, KillMatrix::Cell::Kills);

    SuiteMetrics m = suite_metrics(info, {t}, {"test17"}, kept, mutants, matrix, {{0}}, 10);
    REQUIRE(m.tests.size() == 1);
    CHECK(m.tests[0].responsible_methods.size() == 3);
    CHECK(m.sr_rate == 0.0);
    // inferred focal method is transferFunds; its closure is not consulted
    // for baseline coherence, only the method itself
    CHECK(m.tests[0].coherence == 1.0);  // the kill set includes transferFunds here
}

TEST_CASE("baseline coherence counts kills in the inferred focal method only") {
    SubjectUnit u = load_corpus("bank_account.sub");
    SubjectInfo info(u);
    TestCase t = closed_account_sequence_test(Representation::Baseline);

    auto mutants = mutants_in({"closeAccount", "deposit"});
    // two assertions: one killing deposit mutants, one killing closeAccount
    std::vector<std::vector<Assertion>> kept = {{killer(0, {1}), killer(1, {0})}};
    KillMatrix matrix(1, {2}, 2);
    matrix.set(0, 0, 1, KillMatrix::Cell::Kills);
    matrix.set(0, 1, 0, KillMatrix::Cell::Kills);

    SuiteMetrics m = suite_metrics(info, {t}, {"test17"}, kept, mutants, matrix, {{0, 1}}, 10);
    // last subject call is transferFunds; neither assertion kills inside it
    CHECK(m.tests[0].coherence == 0.0);
    CHECK(m.tests[0].responsible_methods ==
          std::vector<std::string>{"closeAccount", "deposit"});
}

TEST_CASE("focal suites report full coherence and single responsibility") {
    SubjectUnit u = load_corpus("bank_account.sub");
    SubjectInfo info(u);
    RunConfig cfg;
    cfg.repr = Representation::Focal;
    cfg.seed = 2;
    cfg.budget = 20000;
    cfg.tolerance = 0.01;
    GenerateOutput out = run_generate(info, "bank_account", cfg);
    CHECK(out.metrics.sr_rate == 1.0);
    CHECK(out.metrics.mean_coherence == 1.0);
    for (auto& rec : out.metrics.tests) {
        CHECK(!rec.focal_method.empty());
        CHECK(rec.responsible_methods.size() <= 1);
        CHECK(rec.coherence == 1.0);
        // no responsibility outside the focal closure
        auto closure = info.static_call_closure(rec.focal_method);
        for (auto& m : rec.responsible_methods) CHECK(closure.count(m) == 1);
    }
}

TEST_CASE("an empty suite reports zero rates and the empty-suite flag") {
    SubjectUnit u = load_corpus("counter.sub");
    SubjectInfo info(u);
    auto mutants = generate_mutants(u);
    KillMatrix matrix(0, {}, static_cast<int>(mutants.size()));
    SuiteMetrics m = suite_metrics(info, {}, {}, {}, mutants, matrix, {}, 0);
    CHECK(m.coverage == 0.0);
    CHECK(m.sr_rate == 0.0);
    CHECK(m.mean_coherence == 0.0);
    bool flagged = false;
    for (auto& f : m.flags)
        if (f == "empty-suite") flagged = true;
    CHECK(flagged);
}

TEST_CASE("report metrics agree with an independent recomputation") {
    SubjectUnit u = load_corpus("turnstile.sub");
    SubjectInfo info(u);
    RunConfig cfg;
    cfg.seed = 4;
    cfg.budget = 20000;
    for (Representation repr : {Representation::Baseline, Representation::Focal}) {
        cfg.repr = repr;
        GenerateOutput out = run_generate(info, "turnstile", cfg);
        const SuiteMetrics& m = out.metrics;
        CHECK(m.coverage ==
              doctest::Approx(static_cast<double>(m.goals_covered) / m.goals_total));
        CHECK(m.mutation_score ==
              doctest::Approx(static_cast<double>(m.mutants_killed) / m.mutants_total));
        CHECK(m.goals_covered <= m.goals_total);
        CHECK(m.mutants_killed <= m.mutants_total);
        int sr = 0;
        double coh = 0.0;
        for (auto& rec : m.tests) {
            CHECK(rec.coherence >= 0.0);
            CHECK(rec.coherence <= 1.0);
            if (rec.responsible_methods.size() <= 1) ++sr;
            coh += rec.coherence;
        }
        CHECK(m.sr_rate == doctest::Approx(static_cast<double>(sr) / m.tests.size()));
        CHECK(m.mean_coherence == doctest::Approx(coh / m.tests.size()));
    }
}

TEST_CASE("comparison emits one data row per run plus one summary row per pair") {
    std::vector<CompareRow> rows;
    for (int repr = 0; repr < 2; ++repr) {
        for (uint64_t seed = 1; seed <= 10; ++seed) {
            CompareRow r;
            r.subject = "bank_account";
            r.repr = repr ? Representation::Focal : Representation::Baseline;
            r.seed = seed;
            r.metrics.coverage = 1.0;
            r.metrics.mutation_score = 0.8;
            r.metrics.sr_rate = repr ? 1.0 : 0.5;
            r.metrics.mean_coherence = repr ? 1.0 : 0.5;
            r.evals_used = 1000 + seed;
            rows.push_back(r);
        }
    }
    CompareOutput out = compare(rows);
    int data = 0, summary = 0;
    std::istringstream ss(out.csv);
    std::string line;
    std::getline(ss, line);  // header
    CHECK(line ==
          "subject,representation,seed,coverage,mutation_score,sr_rate,mean_coherence,n_tests,"
          "evals_used");
    while (std::getline(ss, line)) {
        if (line.find("median|iqr") != std::string::npos)
            ++summary;
        else if (!line.empty())
            ++data;
    }
    CHECK(data == 20);
    CHECK(summary == 2);
    CHECK(out.warnings.empty());

    // identical metric vectors: median equals the value and the spread is 0
    CHECK(out.csv.find("bank_account,focal,median|iqr,1|0,") != std::string::npos);
}

TEST_CASE("subjects present in one representation only are listed, not compared") {
    std::vector<CompareRow> rows;
    CompareRow r;
    r.subject = "lonely";
    r.repr = Representation::Focal;
    r.seed = 1;
    rows.push_back(r);
    CompareOutput out = compare(rows);
    REQUIRE(out.warnings.size() == 1);
    CHECK(out.warnings[0].find("lonely") != std::string::npos);
    CHECK(out.csv.find("median|iqr") == std::string::npos);
}

TEST_CASE("failed rows carry the failure marker") {
    std::vector<CompareRow> rows;
    CompareRow ok;
    ok.subject = "a";
    ok.repr = Representation::Baseline;
    ok.seed = 1;
    CompareRow bad = ok;
    bad.repr = Representation::Focal;
    bad.failed = true;
    rows.push_back(ok);
    rows.push_back(bad);
    CompareOutput out = compare(rows);
    CHECK(out.csv.find("a,focal,1,failed") != std::string::npos);
}
