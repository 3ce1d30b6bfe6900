#include "srgen/pipeline.hpp"

#include <json.hpp>

#include "srgen/fitness.hpp"
#include "srgen/version.hpp"

namespace srgen {

using ordered_json = nlohmann::ordered_json;

namespace {

SearchConfig to_search_config(const RunConfig& cfg) {
    SearchConfig s;
    s.population_size = cfg.population;
    s.max_evaluations = cfg.budget;
    s.crossover_rate = cfg.crossover_rate;
    s.seed = cfg.seed;
    s.repr = cfg.repr;
    s.chrom = cfg.chrom;
    s.limits = cfg.limits;
    return s;
}

ordered_json metrics_json(const SuiteMetrics& m) {
    ordered_json tests = ordered_json::array();
    for (const TestRecord& t : m.tests) {
        ordered_json jt;
        jt["name"] = t.name;
        if (!t.focal_method.empty()) jt["focal_method"] = t.focal_method;
        jt["n_statements"] = t.n_statements;
        jt["n_assertions"] = t.n_assertions;
        jt["responsible_methods"] = t.responsible_methods;
        jt["coherence"] = t.coherence;
        jt["fallback"] = t.has_fallback;
        tests.push_back(std::move(jt));
    }
    ordered_json j;
    j["goals"] = {{"total", m.goals_total}, {"covered", m.goals_covered}};
    j["coverage"] = m.coverage;
    j["mutants"] = {{"total", m.mutants_total}, {"killed", m.mutants_killed}};
    j["mutation_score"] = m.mutation_score;
    j["sr_rate"] = m.sr_rate;
    j["mean_coherence"] = m.mean_coherence;
    j["tests"] = std::move(tests);
    j["flags"] = m.flags;
    return j;
}

}  // namespace

GenerateOutput run_generate(const SubjectInfo& info, const std::string& subject_label,
                            const RunConfig& cfg) {
    GenerateOutput out;

    SearchResult search = run_search(info, to_search_config(cfg));
    out.stats = search.stats;
    out.suite = search.archive.suite();
    int covered = static_cast<int>(search.archive.covered().size());

    // original runs, observations, candidate assertions
    std::vector<ExecResult> runs;
    std::vector<std::vector<Assertion>> candidates;
    for (const TestCase& t : out.suite) {
        runs.push_back(execute_test(info, t, cfg.limits));
        candidates.push_back(candidate_assertions(
            harvest_observations(info, t, runs.back(), cfg.limits), cfg.tolerance));
    }

    std::vector<Mutant> mutants = generate_mutants(info.unit());
    std::vector<TestUnderAnalysis> analysis;
    for (size_t t = 0; t < out.suite.size(); ++t) {
        TestUnderAnalysis tu;
        tu.test = &out.suite[t];
        for (const Assertion& a : candidates[t]) {
            tu.expected.push_back(a.point);
            tu.tolerance.push_back(a.tolerance);
        }
        analysis.push_back(std::move(tu));
    }
    KillMatrix matrix = run_kill_analysis(info.unit(), analysis, mutants, cfg.limits);

    std::vector<std::vector<int>> kept_rows;
    for (size_t t = 0; t < out.suite.size(); ++t) {
        fill_kill_sets(candidates[t], matrix, static_cast<int>(t));
        std::vector<Assertion> kept = select_unique_killers(candidates[t], out.suite[t]);
        if (out.suite[t].repr == Representation::Focal)
            kept = filter_focal(kept, mutants, info.static_call_closure(out.suite[t].focal_method));
        std::vector<int> rows;
        for (const Assertion& a : kept) rows.push_back(a.id);
        kept_rows.push_back(std::move(rows));
        out.kept.push_back(std::move(kept));
    }

    RenderStyle style;
    style.aaa_comments = cfg.aaa_comments;
    RenderedSuite rendered = render_suite(out.suite, out.kept, info, style);
    out.names = rendered.names;
    out.rendered = rendered.file_text;

    out.metrics = suite_metrics(info, out.suite, out.names, out.kept, mutants, matrix, kept_rows,
                                covered);

    ordered_json j;
    j["subject"] = subject_label;
    j["representation"] = repr_name(cfg.repr);
    j["seed"] = cfg.seed;
    j["budget_used"] = out.stats.evaluations;
    ordered_json body = metrics_json(out.metrics);
    for (auto& [key, value] : body.items()) j[key] = value;
    ordered_json curve = ordered_json::array();
    for (const CurvePoint& p : out.stats.curve)
        curve.push_back({p.generation, p.evaluations, p.covered});
    j["curve"] = std::move(curve);
    out.report_json = j.dump(2) + "\n";

    if (cfg.dump_traces) {
        ordered_json traces = ordered_json::array();
        for (size_t t = 0; t < out.suite.size(); ++t) {
            ordered_json jt;
            jt["test"] = out.names[t];
            jt["steps"] = runs[t].trace.steps;
            ordered_json goals = ordered_json::array();
            for (int g = 0; g < info.goal_count(); ++g) {
                ordered_json jg;
                jg["id"] = info.goals()[g].id;
                jg["covered_at"] = runs[t].trace.covered_at[g];
                if (auto d = runs[t].trace.min_dist(g)) jg["min_distance"] = *d;
                goals.push_back(std::move(jg));
            }
            jt["goals"] = std::move(goals);
            traces.push_back(std::move(jt));
        }
        out.traces_json = traces.dump(2) + "\n";
    }
    return out;
}

EvaluateOutput run_evaluate(const SubjectInfo& info, const std::string& subject_label,
                            const ParsedSuite& suite, const ExecLimits& limits) {
    EvaluateOutput out;

    // original-subject validation and window coverage
    std::vector<bool> goal_covered(info.goal_count(), false);
    for (size_t t = 0; t < suite.tests.size(); ++t) {
        const TestCase& test = suite.tests[t];
        ExecResult run = execute_test(info, test, limits);
        std::vector<Observation> actual = harvest_observations(info, test, run, limits);
        StmtWindow w = scoring_window(test);
        for (int g = 0; g < info.goal_count(); ++g)
            if (run.trace.covered_in(g, w)) goal_covered[g] = true;

        for (const Assertion& a : suite.assertions[t]) {
            const Observation* found = nullptr;
            for (const Observation& o : actual)
                if (o.same_point(a.point)) found = &o;
            if (!found) {
                ++out.failed_assertions;
                out.failures.push_back(suite.names[t] + ": assertion " + std::to_string(a.id) +
                                       " observes nothing on the original subject");
            } else if (observation_mismatch(a.point, *found, a.tolerance)) {
                ++out.failed_assertions;
                out.failures.push_back(suite.names[t] + ": assertion " + std::to_string(a.id) +
                                       " fails on the original subject");
            }
        }
    }
    int covered = 0;
    for (bool b : goal_covered)
        if (b) ++covered;

    std::vector<Mutant> mutants = generate_mutants(info.unit());
    std::vector<TestUnderAnalysis> analysis;
    for (size_t t = 0; t < suite.tests.size(); ++t) {
        TestUnderAnalysis tu;
        tu.test = &suite.tests[t];
        for (const Assertion& a : suite.assertions[t]) {
            tu.expected.push_back(a.point);
            tu.tolerance.push_back(a.tolerance);
        }
        analysis.push_back(std::move(tu));
    }
    KillMatrix matrix = run_kill_analysis(info.unit(), analysis, mutants, limits);

    std::vector<std::vector<Assertion>> kept = suite.assertions;
    std::vector<std::vector<int>> kept_rows;
    for (size_t t = 0; t < kept.size(); ++t) {
        fill_kill_sets(kept[t], matrix, static_cast<int>(t));
        std::vector<int> rows;
        for (const Assertion& a : kept[t]) rows.push_back(a.id);
        kept_rows.push_back(std::move(rows));
    }

    out.metrics = suite_metrics(info, suite.tests, suite.names, kept, mutants, matrix, kept_rows,
                                covered);

    ordered_json j;
    j["subject"] = subject_label;
    j["representation"] = repr_name(suite.repr);
    ordered_json body = metrics_json(out.metrics);
    for (auto& [key, value] : body.items()) j[key] = value;
    j["failed_assertions"] = out.failed_assertions;
    j["failures"] = out.failures;
    out.report_json = j.dump(2) + "\n";
    return out;
}

std::string manifest_json(const std::string& subject_path, const RunConfig& cfg,
                          const std::string& out_dir, const std::string& timestamp) {
    ordered_json j;
    j["subject"] = subject_path;
    j["representation"] = repr_name(cfg.repr);
    j["seed"] = cfg.seed;
    j["config"] = {{"population", cfg.population},
                   {"budget", cfg.budget},
                   {"crossover_rate", cfg.crossover_rate},
                   {"max_len", cfg.chrom.max_len},
                   {"init_len", cfg.chrom.init_len},
                   {"step_limit", cfg.limits.step_limit},
                   {"tolerance", cfg.tolerance}};
    j["out_dir"] = out_dir;
    j["tool_version"] = kToolVersion;
    j["timestamp"] = timestamp;
    return j.dump(2) + "\n";
}

}  // namespace srgen
