#include "srgen/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "srgen/value.hpp"

namespace srgen {

namespace {

// Inferred focal method of a baseline test: the last statement calling a
// subject method, falling back to the last constructor call.
std::string inferred_focal(const TestCase& t) {
    for (int i = t.size() - 1; i >= 0; --i) {
        if (t.stmts[i].kind == Statement::Kind::Method) return t.stmts[i].method;
    }
    for (int i = t.size() - 1; i >= 0; --i) {
        if (t.stmts[i].kind == Statement::Kind::Constructor) return "constructor";
    }
    return "";
}

}  // namespace

SuiteMetrics suite_metrics(const SubjectInfo& info, const std::vector<TestCase>& suite,
                           const std::vector<std::string>& names,
                           const std::vector<std::vector<Assertion>>& kept,
                           const std::vector<Mutant>& mutants, const KillMatrix& matrix,
                           const std::vector<std::vector<int>>& kept_rows, int goals_covered) {
    SuiteMetrics out;
    out.goals_total = info.goal_count();
    out.goals_covered = goals_covered;
    out.coverage = out.goals_total > 0
                       ? static_cast<double>(goals_covered) / static_cast<double>(out.goals_total)
                       : 0.0;

    MutationScore score = mutation_score(matrix, kept_rows);
    out.mutants_total = score.total;
    out.mutants_killed = score.killed;
    out.mutation_score = score.score;
    if (score.no_mutants) out.flags.push_back("no-mutants");

    if (suite.empty()) {
        out.flags.push_back("empty-suite");
        out.coverage = 0.0;
        return out;
    }

    int sr_ok = 0;
    double coherence_sum = 0.0;
    for (size_t t = 0; t < suite.size(); ++t) {
        const TestCase& test = suite[t];
        TestRecord rec;
        rec.name = names[t];
        rec.n_statements = test.size();
        rec.n_assertions = static_cast<int>(kept[t].size());

        std::set<std::string> responsible;
        int non_fallback = 0;
        int related = 0;

        if (test.repr == Representation::Focal) {
            rec.focal_method = test.focal_method;
            std::set<std::string> scope = info.static_call_closure(test.focal_method);
            bool any_scope_kill = false;
            for (const Assertion& a : kept[t]) {
                if (a.fallback) {
                    rec.has_fallback = true;
                    continue;
                }
                ++non_fallback;
                bool in_scope = false;
                for (int m : a.killed)
                    if (scope.count(mutants[m].method)) in_scope = true;
                if (in_scope) {
                    ++related;
                    any_scope_kill = true;
                }
            }
            if (any_scope_kill) responsible.insert(test.focal_method);
        } else {
            std::string focal_guess = inferred_focal(test);
            for (const Assertion& a : kept[t]) {
                if (a.fallback) {
                    rec.has_fallback = true;
                    continue;
                }
                ++non_fallback;
                bool in_scope = false;
                for (int m : a.killed) {
                    responsible.insert(mutants[m].method);
                    if (!focal_guess.empty() && mutants[m].method == focal_guess) in_scope = true;
                }
                if (in_scope) ++related;
            }
        }

        rec.coherence = non_fallback > 0
                            ? static_cast<double>(related) / static_cast<double>(non_fallback)
                            : 1.0;
        rec.responsible_methods.assign(responsible.begin(), responsible.end());
        if (responsible.size() <= 1) ++sr_ok;
        coherence_sum += rec.coherence;
        out.tests.push_back(std::move(rec));
    }

    out.sr_rate = static_cast<double>(sr_ok) / static_cast<double>(suite.size());
    out.mean_coherence = coherence_sum / static_cast<double>(suite.size());
    return out;
}

// ---------------------------------------------------------------------------
// comparison table
// ---------------------------------------------------------------------------

namespace {

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    if (n == 0) return 0.0;
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

// Quartiles over the halves excluding the median for odd sizes.
double iqr_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    if (n < 2) return 0.0;
    std::vector<double> lower(v.begin(), v.begin() + n / 2);
    std::vector<double> upper(v.begin() + (n + 1) / 2, v.end());
    return median_of(upper) - median_of(lower);
}

std::string num(double v) {
    if (v == static_cast<int64_t>(v) && std::abs(v) < 1e15)
        return std::to_string(static_cast<int64_t>(v));
    return format_float(v);
}

}  // namespace

CompareOutput compare(const std::vector<CompareRow>& rows) {
    CompareOutput out;
    std::ostringstream csv;
    csv << "subject,representation,seed,coverage,mutation_score,sr_rate,mean_coherence,n_tests,"
           "evals_used\n";

    std::vector<CompareRow> sorted = rows;
    std::stable_sort(sorted.begin(), sorted.end(), [](const CompareRow& a, const CompareRow& b) {
        if (a.subject != b.subject) return a.subject < b.subject;
        if (a.repr != b.repr) return repr_name(a.repr) < std::string(repr_name(b.repr));
        return a.seed < b.seed;
    });

    for (const CompareRow& r : sorted) {
        csv << r.subject << "," << repr_name(r.repr) << "," << r.seed << ",";
        if (r.failed) {
            csv << "failed,failed,failed,failed,failed,failed\n";
            continue;
        }
        csv << num(r.metrics.coverage) << "," << num(r.metrics.mutation_score) << ","
            << num(r.metrics.sr_rate) << "," << num(r.metrics.mean_coherence) << ","
            << r.metrics.tests.size() << "," << r.evals_used << "\n";
    }

    // summaries per (subject, representation); subjects lacking a
    // counterpart representation are listed as warnings instead
    std::map<std::string, std::set<std::string>> reprs_seen;
    for (const CompareRow& r : sorted)
        if (!r.failed) reprs_seen[r.subject].insert(repr_name(r.repr));

    std::map<std::pair<std::string, std::string>, std::vector<const CompareRow*>> cells;
    for (const CompareRow& r : sorted)
        if (!r.failed) cells[{r.subject, repr_name(r.repr)}].push_back(&r);

    for (auto& [key, group] : cells) {
        const auto& [subject, repr] = key;
        if (reprs_seen[subject].size() < 2) {
            continue;
        }
        auto col = [&](auto getter) {
            std::vector<double> v;
            for (const CompareRow* r : group) v.push_back(getter(*r));
            return v;
        };
        auto cell = [&](std::vector<double> v) {
            return num(median_of(v)) + "|" + num(iqr_of(v));
        };
        csv << subject << "," << repr << ",median|iqr,"
            << cell(col([](const CompareRow& r) { return r.metrics.coverage; })) << ","
            << cell(col([](const CompareRow& r) { return r.metrics.mutation_score; })) << ","
            << cell(col([](const CompareRow& r) { return r.metrics.sr_rate; })) << ","
            << cell(col([](const CompareRow& r) { return r.metrics.mean_coherence; })) << ","
            << cell(col([](const CompareRow& r) { return static_cast<double>(r.metrics.tests.size()); }))
            << "," << cell(col([](const CompareRow& r) { return static_cast<double>(r.evals_used); }))
            << "\n";
    }

    for (auto& [subject, reprs] : reprs_seen) {
        if (reprs.size() < 2)
            out.warnings.push_back("subject '" + subject +
                                   "' present in one representation only; not compared");
    }

    out.csv = csv.str();
    return out;
}

}  // namespace srgen
